"""Errores del dominio. Los comandos los convierten en CommandError."""


class RotationError(Exception):
    """Base de todos los errores del paquete."""


class InvalidParameter(RotationError, ValueError):
    pass


class NotInvertible(RotationError):
    pass


class UnknownMap(RotationError, KeyError):
    def __str__(self):
        # KeyError pone comillas alrededor del mensaje
        return str(self.args[0]) if self.args else ''


class NonFiniteImage(RotationError, ArithmeticError):
    pass


class NonFiniteOrbit(RotationError, ArithmeticError):
    pass


class EmptyInput(RotationError, ValueError):
    pass


class UnknownFigure(RotationError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ''


class ConfigError(RotationError):
    pass
