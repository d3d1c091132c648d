from django.http import JsonResponse
from django.shortcuts import get_object_or_404

from .errors import OperadError
from .models import ComputationRun, OperadSource


def _run_summary(run):
    return {
        'id': run.pk,
        'command': run.command,
        'status': run.status,
        'exit_code': run.exit_code,
        'duration': run.duration,
        'source': run.source.name if run.source else None,
        'criado_em': run.criado_em.isoformat(),
    }


def lista_runs(request):
    """Execuções salvas, mais recentes primeiro; filtros opcionais por comando e status"""
    runs = ComputationRun.objects.select_related('source')

    command = request.GET.get('command', '').strip()
    if command:
        runs = runs.filter(command=command)

    status = request.GET.get('status', '').strip()
    if status in ComputationRun.Status.values:
        runs = runs.filter(status=status)

    try:
        limit = max(1, min(int(request.GET.get('limit', 50)), 500))
    except (ValueError, TypeError):
        limit = 50

    return JsonResponse({'runs': [_run_summary(run) for run in runs[:limit]]})


def detalhe_run(request, pk):
    run = get_object_or_404(ComputationRun.objects.select_related('source'), pk=pk)
    data = _run_summary(run)
    data.update({
        'options': run.options,
        'message': run.message,
        'report': run.report,
        'text_report': run.text_report,
    })
    return JsonResponse(data)


def detalhe_source(request, pk):
    """Documento salvo com a forma normalizada (ou o erro de leitura)"""
    source = get_object_or_404(OperadSource, pk=pk)
    data = {
        'id': source.pk,
        'name': source.name,
        'kind': source.kind,
        'description': source.description,
        'text': source.text,
        'runs': list(source.runs.values_list('pk', flat=True)),
    }
    try:
        data['normalized'] = source.normalized()
    except OperadError as error:
        data['error'] = str(error)
        data['exit_code'] = error.exit_code
    return JsonResponse(data)
