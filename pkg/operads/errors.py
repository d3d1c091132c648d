"""Hierarquia de erros do motor de operads.

Cada classe carrega o código de saída usado pelo comando ``operad``.
"""


class OperadError(Exception):
    exit_code = 4

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        return self.message


class PresentationError(OperadError):
    """Apresentação inválida: gerador não declarado, aridade errada etc."""
    exit_code = 2


class DSLSyntaxError(PresentationError):
    def __init__(self, message, line, column):
        super().__init__(f'line {line}, column {column}: {message}', line=line, column=column)
        self.line = line
        self.column = column


class InvalidMonomialError(PresentationError):
    pass


class OrderingError(PresentationError):
    pass


class ResourceCapExceeded(OperadError):
    exit_code = 3


class IncompleteBasisError(OperadError):
    """A base de Gröbner não certifica a aridade pedida."""


class MorphismError(OperadError):
    pass


class MathematicalFailure(OperadError):
    pass
