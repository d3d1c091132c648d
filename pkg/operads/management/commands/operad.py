"""Comando ``operad``: porta de entrada em lote do motor.

Códigos de saída: 0 sucesso, 1 uso incorreto, 2 erro de leitura, 3 limite de recursos,
4 falha matemática (morfismo mal definido, base incompleta, etc.).
"""
import json
import logging
import sys
import time

from django.core.management.base import BaseCommand, CommandError, CommandParser

from operads import zoo
from operads.dsl import (
    document_kind, parse, parse_algebra, parse_map, parse_morphism, print_algebra, print_morphism,
    print_presentation,
)
from operads.envelope import GradedAlgebra, direct_image, evaluate, evaluate_generators
from operads.errors import OperadError, PresentationError
from operads.groebner import buchberger
from operads.models import ComputationRun, OperadSource
from operads.orderings import check_admissibility, preset_for
from operads.pbw import GradedComparison, PBWAnalysis, RightModule, freeness_check, verify_morphism
from operads.presentation import OperadMorphism, shuffleize
from operads.reports import render, render_json
from operads.series import egf_compose, egf_of, egf_solve_left

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('parse', 'gb', 'dims', 'gr', 'morphism-check', 'pbw-check', 'envelope', 'egf')

DJANGO_OPTIONS = {
    'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks',
    'stdout', 'stderr',
}


class OperadParser(CommandParser):
    """Erros de uso saem com código 1 (o argparse usaria 2, reservado a erros de leitura)."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(1, f'{self.prog}: error: {message}\n')
        raise CommandError(f'Error: {message}', returncode=1)


def _positive(value):
    number = int(value)
    if number < 1:
        raise ValueError(value)
    return number


def _dims_list(value):
    return [int(part) for part in value.split(',') if part.strip()]


def _space(value):
    """``"2"`` (dimensão 2 no peso 1) ou ``"1:2,2:1"`` (peso:dimensão)."""
    if ':' not in value:
        return {1: _positive(value)}
    space = {}
    for chunk in value.split(','):
        weight, _, count = chunk.partition(':')
        space[_positive(weight)] = _positive(count)
    return space


class Command(BaseCommand):
    help = 'Bases de Gröbner, análise PBW e envelopes de operads apresentados na DSL.'

    def add_arguments(self, parser):
        parser.__class__ = OperadParser
        subparsers = parser.add_subparsers(dest='subcommand', required=True, metavar='{' + ','.join(SUBCOMMANDS) + '}')

        sub = subparsers.add_parser('parse', help='Lê e normaliza um documento da DSL')
        sub.add_argument('document', help='Nome embutido, caminho de arquivo ou source:NOME')
        self._common(sub)

        for name, text in (('gb', 'Base de Gröbner até a aridade dada'), ('dims', 'Dimensões por aridade'),
                           ('gr', 'Graduado associado pela filtração dos pesos')):
            sub = subparsers.add_parser(name, help=text)
            sub.add_argument('--operad', required=True)
            sub.add_argument('--max-arity', type=_positive, default=4)
            sub.add_argument('--ordering')
            if name == 'gb':
                sub.add_argument('--check-ordering', action='store_true',
                                 help='Procura violações de admissibilidade da ordem')
                sub.add_argument('--trials', type=int)
            self._common(sub)

        sub = subparsers.add_parser('morphism-check', help='Verifica se o morfismo respeita as relações')
        self._morphism_arguments(sub)
        sub.add_argument('--max-arity', type=_positive)
        self._common(sub)

        sub = subparsers.add_parser('pbw-check', help='Liberdade de N como M-módulo à direita')
        self._morphism_arguments(sub)
        sub.add_argument('--max-arity', type=_positive, default=4)
        sub.add_argument('--ordering')
        sub.add_argument('--gr', action='store_true', help='Analisa via graduado associado')
        sub.add_argument('--no-bar', action='store_true', help='Pula a homologia de barra')
        sub.add_argument('--samples', type=int, default=20, help='Amostras do teste de associatividade da ação')
        self._common(sub)

        sub = subparsers.add_parser('envelope', help='Imagem direta de uma álgebra ou avaliação de um operad')
        self._morphism_arguments(sub)
        sub.add_argument('--algebra')
        sub.add_argument('--operad')
        sub.add_argument('--space', type=_space, help='"2" ou "1:2,2:1" (peso:dimensão)')
        sub.add_argument('--max-weight', type=_positive, default=4)
        self._common(sub)

        sub = subparsers.add_parser('egf', help='Séries geradoras exponenciais truncadas')
        sub.add_argument('--dims', type=_dims_list)
        sub.add_argument('--operad')
        sub.add_argument('--max-arity', type=_positive)
        sub.add_argument('--compose', type=_dims_list, help='Dimensões de g para f∘g')
        sub.add_argument('--solve', type=_dims_list, help='Dimensões de g para resolver f_X∘g = f')
        sub.add_argument('--order', type=_positive)
        self._common(sub)

    def _common(self, sub):
        sub.add_argument('--format', choices=['json', 'text'], default='json')
        sub.add_argument('--seed', type=int, default=0)
        sub.add_argument('--save', action='store_true', help='Registra a execução no banco')

    def _morphism_arguments(self, sub):
        sub.add_argument('--morphism', help='Nome embutido, identity:OPERAD, arquivo ou source:NOME')
        sub.add_argument('--source')
        sub.add_argument('--target')
        sub.add_argument('--map', action='append', default=[], help='"g -> TERMO"; pode repetir')

    # -- referências -------------------------------------------------------------

    def _stored(self, ref, kind):
        name = ref.partition(':')[2]
        try:
            source = OperadSource.objects.get(name=name)
        except OperadSource.DoesNotExist:
            raise PresentationError(f"no stored document named '{name}'")
        if document_kind(source.text) != kind:
            raise PresentationError(f"stored document '{name}' is not a {kind}")
        self.stored_source = self.stored_source or source
        return source.text

    def _operad(self, ref):
        if ref.startswith('source:'):
            return parse(self._stored(ref, 'operad'))
        return zoo.load_operad(ref)

    def _algebra(self, ref):
        if ref.startswith('source:'):
            spec = parse_algebra(self._stored(ref, 'algebra'), self._operad)
        elif ref in zoo.ALGEBRAS:
            spec = zoo.load_algebra(ref)
        else:
            spec = parse_algebra(zoo.read_source(ref), self._operad)
        return GradedAlgebra.from_spec(spec)

    def _morphism(self, options):
        if options['morphism']:
            ref = options['morphism']
            if ref.startswith('source:'):
                return parse_morphism(self._stored(ref, 'morphism'), self._operad)
            if ref.startswith('identity:') or ref in zoo.MORPHISMS:
                return zoo.load_morphism(ref)
            return parse_morphism(zoo.read_source(ref), self._operad)
        if not (options['source'] and options['target']):
            raise CommandError('give --morphism or both --source and --target', returncode=1)
        source, target = self._operad(options['source']), self._operad(options['target'])
        if not options['map']:
            found = zoo.find_morphism(source.name, target.name)
            if found is None:
                raise CommandError(f'no built-in morphism {source.name} -> {target.name}; pass --map', returncode=1)
            return found
        images = {}
        for text in options['map']:
            images.update(parse_map(text, source, target))
        return OperadMorphism(f'{source.name}To{target.name}', source, target, images)

    def _document(self, ref):
        if ref.startswith('source:'):
            name = ref.partition(':')[2]
            stored = OperadSource.objects.filter(name=name).first()
            if stored is None:
                raise PresentationError(f"no stored document named '{name}'")
            self.stored_source = stored
            return stored.kind, stored.parsed(self._operad)
        if ref in zoo.OPERADS:
            return 'operad', zoo.load_operad(ref)
        if ref in zoo.MORPHISMS or ref.startswith('identity:'):
            return 'morphism', zoo.load_morphism(ref)
        if ref in zoo.ALGEBRAS:
            return 'algebra', zoo.load_algebra(ref)
        text = zoo.read_source(ref)
        kind = document_kind(text)
        if kind == 'morphism':
            return kind, parse_morphism(text, self._operad)
        if kind == 'algebra':
            return kind, parse_algebra(text, self._operad)
        return kind, parse(text)

    # -- subcomandos ----------------------------------------------------------------

    def handle_parse(self, options):
        kind, value = self._document(options['document'])
        if kind == 'operad':
            shuffled = shuffleize(value)
            return {
                'kind': kind,
                'name': value.name,
                'generators': [
                    {'name': g.name, 'arity': g.arity, 'symmetry': g.symmetry.value, 'weight': g.weight}
                    for g in value.generators
                ],
                'relations': [r.to_string(variable_prefix='a') for r in value.relations],
                'shuffle': {
                    'generators': [g.name for g in shuffled.generators],
                    'relations': len(shuffled.relations),
                },
                'printed': print_presentation(value),
            }
        if kind == 'morphism':
            return {
                'kind': kind,
                'name': value.name,
                'source': value.source.name,
                'target': value.target.name,
                'images': {name: image.to_string(variable_prefix='a') for name, image in value.images.items()},
                'printed': print_morphism(value),
            }
        algebra = GradedAlgebra.from_spec(value)
        algebra.check()
        return {
            'kind': kind,
            'name': algebra.name,
            'operad': algebra.operad.name,
            'basis': [{'name': n, 'weight': w} for n, w in zip(algebra.names, algebra.weights)],
            'dims': {str(w): d for w, d in algebra.dims.items()},
            'products': len(value.products),
            'printed': print_algebra(value),
        }

    def _basis(self, options):
        presentation = shuffleize(self._operad(options['operad']))
        ordering = options['ordering'] or preset_for(presentation.generators)
        return presentation, buchberger(presentation, ordering, options['max_arity'])

    def handle_gb(self, options):
        presentation, basis = self._basis(options)
        report = {'operad': presentation.source.name, 'max_arity': options['max_arity'], 'basis': basis.to_json()}
        if options['check_ordering']:
            admissibility = check_admissibility(
                basis.ordering, presentation.generators, trials=options['trials'], seed=options['seed'],
            )
            report['admissibility'] = admissibility.to_json()
        return report

    def handle_dims(self, options):
        presentation, basis = self._basis(options)
        dims = basis.dims()
        return {
            'operad': presentation.source.name,
            'ordering': str(basis.ordering),
            'max_arity': options['max_arity'],
            'dims': {str(n): d for n, d in dims.items()},
            'egf': egf_of(dims, options['max_arity']).to_json(),
        }

    def handle_gr(self, options):
        operad = self._operad(options['operad'])
        comparison = GradedComparison(shuffleize(operad), options['max_arity'], options['ordering'])
        return {'operad': operad.name, 'max_arity': options['max_arity'], 'gr': comparison.to_json()}

    def handle_morphism_check(self, options):
        morphism = self._morphism(options)
        shuffled = morphism.shuffled()
        max_arity = options['max_arity'] or max(shuffled.source.max_relation_arity(), 1)
        basis = buchberger(shuffled.target, preset_for(shuffled.target.generators), max_arity)
        result = verify_morphism(shuffled, basis)
        return {
            'morphism': morphism.name,
            'source': morphism.source.name,
            'target': morphism.target.name,
            'max_arity': max_arity,
            **result,
        }

    def handle_pbw_check(self, options):
        analysis = PBWAnalysis(self._morphism(options), options['max_arity'], options['gr'], options['ordering'])
        report = analysis.run(bar=not options['no_bar'])
        failures = analysis.module.check_action_associativity(
            options['max_arity'], samples=options['samples'], seed=options['seed'],
        )
        report['action_associativity'] = {
            'samples': options['samples'],
            'seed': options['seed'],
            'failures': [list(map(str, failure)) for failure in failures],
        }
        return report

    def handle_envelope(self, options):
        max_weight = options['max_weight']
        if options['operad']:
            if options['algebra'] or not options['space']:
                raise CommandError('--operad needs --space and no --algebra', returncode=1)
            presentation = shuffleize(self._operad(options['operad']))
            basis = buchberger(presentation, preset_for(presentation.generators), max_weight)
            return {
                'operad': presentation.source.name,
                'space': {str(w): d for w, d in sorted(options['space'].items())},
                'max_weight': max_weight,
                'dims': {str(w): d for w, d in evaluate(basis, options['space'], max_weight).items()},
            }
        if not options['algebra']:
            raise CommandError('give --algebra (with a morphism) or --operad with --space', returncode=1)
        algebra = self._algebra(options['algebra'])
        morphism = self._morphism(options)
        module = RightModule.build(morphism.shuffled(), max_weight)
        image = direct_image(module, algebra, max_weight)
        generators = evaluate_generators(module, algebra.dims, max_weight)
        freeness = freeness_check(module, max_weight, witness=False)
        return {
            'morphism': morphism.name,
            'algebra': algebra.name,
            'max_weight': max_weight,
            'algebra_dims': {str(w): d for w, d in algebra.dims.items()},
            'direct_image': {str(w): d for w, d in image.items()},
            'generator_evaluation': {str(w): d for w, d in generators.items()},
            'free_up_to': freeness.free_up_to,
            'matches_generators': image == generators,
        }

    def handle_egf(self, options):
        if options['operad']:
            presentation = shuffleize(self._operad(options['operad']))
            max_arity = options['max_arity'] or 4
            basis = buchberger(presentation, preset_for(presentation.generators), max_arity)
            dims = basis.dims()
        elif options['dims']:
            dims = dict(enumerate(options['dims'], start=1))
        else:
            raise CommandError('give --dims or --operad', returncode=1)
        order = options['order'] or max(dims)
        f = egf_of(dims, order)
        report = {
            'order': order,
            'egf_dims': {str(n): d for n, d in f.dims().items()},
            'egf': f.to_json(),
        }
        if options['compose']:
            report['composed'] = egf_compose(f, egf_of(options['compose'], order)).to_json()
        if options['solve']:
            solved = egf_solve_left(f, egf_of(options['solve'], order))
            report['solved'] = {**solved.to_json(), 'obstructions': solved.obstructions()}
        return report

    # -- execução -------------------------------------------------------------------

    def _save(self, command, options, exit_code, started, report=None, text='', message=''):
        stored = {
            key: value for key, value in options.items()
            if key not in DJANGO_OPTIONS and isinstance(value, (str, int, float, bool, list, dict, type(None)))
        }
        if isinstance(stored.get('space'), dict):
            stored['space'] = {str(w): d for w, d in stored['space'].items()}
        return ComputationRun.objects.create(
            command=command,
            options=stored,
            status=ComputationRun.status_for(exit_code),
            exit_code=exit_code,
            message=message,
            report=json.loads(render_json(report)) if report is not None else None,
            text_report=text,
            duration=time.monotonic() - started,
            source=self.stored_source,
        )

    def handle(self, *args, **options):
        command = options['subcommand']
        self.stored_source = None
        started = time.monotonic()
        handler = getattr(self, 'handle_' + command.replace('-', '_'))
        try:
            report = handler(options)
        except OperadError as error:
            logger.error('%s falhou (código %d): %s', command, error.exit_code, error)
            if options['save']:
                self._save(command, options, error.exit_code, started, message=str(error))
            raise CommandError(str(error), returncode=error.exit_code)
        output = render(command, report, options['format'])
        if options['save']:
            text = output if options['format'] == 'text' else render(command, report, 'text')
            run = self._save(command, options, 0, started, report=report, text=text)
            logger.info('Execução salva com id %d', run.pk)
        self.stdout.write(output, ending='')
