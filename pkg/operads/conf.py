from django.conf import settings

DEFAULTS = {
    'MAX_ARITY': 8,
    'MAX_BASIS_ELEMENTS': 5000,
    'MAX_WEIGHT': 6,
    'EGF_ORDER': 6,
    'DEFAULT_ORDERING': 'pathlex',
    'ADMISSIBILITY_TRIALS': 10000,
    'BAR_MAX_DEGREE': 2,
    'REDUCTION_STEPS': 200000,
}


def limit(name):
    """Lê um limite do dicionário ``OPERADS`` das settings, com fallback no padrão."""
    configured = getattr(settings, 'OPERADS', None) or {}
    return configured.get(name, DEFAULTS[name])
