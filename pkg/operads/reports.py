"""Saída do comando ``operad``: JSON determinístico e relatórios em texto."""
import json


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + '\n'


def _row(table):
    return ', '.join(f'{n}:{d}' for n, d in sorted(table.items(), key=lambda item: int(item[0])))


def _values(table):
    return ','.join(str(d) for _, d in sorted(table.items(), key=lambda item: int(item[0])))


def _parse_text(report):
    lines = [report['printed'].rstrip()]
    if report['kind'] == 'operad':
        shuffle = report['shuffle']
        lines.append(f"# shuffle: {len(shuffle['generators'])} generators "
                     f"({', '.join(shuffle['generators'])}), {shuffle['relations']} relations")
    elif report['kind'] == 'algebra':
        lines.append(f"# dims by weight: {_row(report['dims'])}")
    return lines


def _gb_text(report):
    basis = report['basis']
    lines = [
        f"Gröbner basis of {report['operad']} under {basis['ordering']}, complete to arity {basis['complete_to']}",
        f"{len(basis['elements'])} elements, quadratic: {'yes' if basis['quadratic'] else 'no'}",
    ]
    for element in basis['elements']:
        lines.append(f"  {element['lead']}  <-  {element['term']}")
    if 'dims' in basis:
        lines.append(f"dims: {_row(basis['dims'])}")
    if 'koszul' in basis:
        verdict = 'yes' if basis['koszul'] else 'not certified'
        lines.append(f"koszul (quadratic basis up to arity {basis['koszul_up_to']}): {verdict}")
    admissibility = report.get('admissibility')
    if admissibility:
        lines.append(f"admissibility: {admissibility['violation_count']} violations in "
                     f"{admissibility['trials']} random trials and {admissibility['exhaustive_pairs']} exhaustive pairs")
    return lines


def _dims_text(report):
    return [
        f"dims of {report['operad']} under {report['ordering']} up to arity {report['max_arity']}",
        f"  {_row(report['dims'])}",
    ]


def _gr_block(gr):
    lines = [f"associated graded {gr['presentation']}:"]
    lines.extend(f'  {relation} = 0' for relation in gr['relations'])
    lines.append(f"quadratic Gröbner basis: {'yes' if gr['quadratic_basis'] else 'no'}")
    for row in gr['check']['per_arity']:
        lines.append(f"  n={row['n']}: dim = {row['dim_base']}, dim gr = {row['dim_candidate']} ({row['verdict']})")
    lines.append(f"gr isomorphic up to arity {gr['check']['isomorphic_up_to']}")
    return lines


def _gr_text(report):
    return [f"{report['operad']} filtered by weights, up to arity {report['max_arity']}"] + _gr_block(report['gr'])


def _morphism_check_text(report):
    verdict = 'valid' if report['valid'] else 'NOT well defined'
    lines = [f"{report['morphism']}: {report['source']} -> {report['target']} is {verdict} "
             f"({report['checked']} relations checked up to arity {report['max_arity']})"]
    for failure in report['failures']:
        lines.append(f"  {failure['relation']}  ->  {failure['normal_form']}")
    return lines


def _pbw_text(report):
    freeness = report['freeness']
    bound = freeness['max_arity']
    generators = ','.join(str(d) for d in freeness['generator_dims'].values())
    lines = []
    if 'gr' in report:
        lines.extend(_gr_block(report['gr']))
    if freeness['free_up_to'] == bound:
        lines.append(f"{report['morphism']}: free up to arity {bound}, generators dims {generators}")
    else:
        defect = next(row['n'] for row in freeness['per_arity'] if row['verdict'] != 'match')
        lines.append(f"{report['morphism']}: NOT free; defect at arity {defect} (bound {bound}), "
                     f"generators dims {generators}")
    if freeness['via_associated_graded']:
        lines.append('  verdict obtained via the associated graded')
    for row in freeness['per_arity']:
        lines.append(f"  n={row['n']}: dim N = {row['dim_N']}, dim X∘M = {row['dim_free_model']} ({row['verdict']})")
    lines.append(f"  EGF solution f_X: {','.join(freeness['egf_generator_dims'].values())}")
    witness = freeness.get('witness')
    if witness:
        lines.append(f"  witness (arity {witness['arity']}): {witness['combination']}")
        lines.append(f"    expands to {witness['expanded']}")
    bar = report.get('bar_homology')
    if bar:
        lines.append('  bar homology:')
        for n, row in sorted(bar.items(), key=lambda item: int(item[0])):
            agreement = 'H_0 = X' if row['h0_matches_generators'] else 'H_0 != X'
            lines.append(f"    n={n}: H_0 = {row['0']}, H_1 = {row['1']} ({agreement})")
    associativity = report.get('action_associativity')
    if associativity:
        lines.append(f"  action associativity: {len(associativity['failures'])} failures in "
                     f"{associativity['samples']} samples (seed {associativity['seed']})")
    return lines


def _envelope_text(report):
    if 'algebra' not in report:
        return [f"{report['operad']} evaluated on V = {_row(report['space'])} up to weight {report['max_weight']}",
                f"  {_row(report['dims'])}"]
    lines = [
        f"envelope of {report['algebra']} along {report['morphism']} up to weight {report['max_weight']}",
        f"  algebra dims:        {_row(report['algebra_dims'])}",
        f"  direct image dims:   {_row(report['direct_image'])}",
        f"  X(A) dims:           {_row(report['generator_evaluation'])}",
    ]
    lines.append(f"  matches X(A): {'yes' if report['matches_generators'] else 'no'} "
                 f"(module free up to arity {report['free_up_to']})")
    return lines


def _egf_text(report):
    lines = [f"f = {_values(report['egf_dims'])} (order {report['order']})"]
    if 'composed' in report:
        lines.append(f"f∘g = {','.join(report['composed']['dims'])}")
    if 'solved' in report:
        solved = report['solved']
        lines.append(f"f_X with f_X∘g = f: {','.join(solved['dims'])}")
        if solved['obstructions']:
            lines.append(f"  not a dimension table at arities {', '.join(map(str, solved['obstructions']))}")
    return lines


TEXT_RENDERERS = {
    'parse': _parse_text,
    'gb': _gb_text,
    'dims': _dims_text,
    'gr': _gr_text,
    'morphism-check': _morphism_check_text,
    'pbw-check': _pbw_text,
    'envelope': _envelope_text,
    'egf': _egf_text,
}


def render_text(command, report):
    return '\n'.join(TEXT_RENDERERS[command](report)) + '\n'


def render(command, report, fmt='json'):
    if fmt == 'text':
        return render_text(command, report)
    return render_json(report)
