"""
Levantamientos F: R² -> R² de homeomorfismos del toro homotópicos a la identidad.

Todos los tipos conmutan con las traslaciones enteras: cada tipo básico suma a
(x, y) una función Z²-periódica de las coordenadas, y la composición, las
potencias y los inversos conservan esa propiedad.

La evaluación está vectorizada: ``apply(x, y)`` acepta arrays de numpy de
cualquier forma (o escalares) y devuelve el par imagen. ``eval_lift`` y
``displacement`` son las versiones puntuales.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Callable, ClassVar

import numpy as np
from scipy.optimize import brentq

from .exceptions import InvalidParameter, NotInvertible, UnknownMap

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Constantes de los ejemplos numéricos.
ALPHA = 0.00137
BETA = 0.00159


class MapKind(StrEnum):
    IDENTITY = 'identity'
    TRANSLATION = 'translation'
    SHEAR_X = 'shear_x'
    SHEAR_Y = 'shear_y'
    PERTURBATION_R = 'perturbation_r'
    TWIST = 'twist'
    COMPOSITE = 'composite'
    POWER = 'power'
    INVERSE = 'inverse'


def _check_finite(owner, **values):
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidParameter(f"{owner}: el parámetro '{name}' no es finito ({value}).")


def _check_frequency(owner, frequency):
    # Una frecuencia no entera rompe la equivariancia por traslaciones enteras.
    if int(frequency) != frequency:
        raise InvalidParameter(f"{owner}: la frecuencia debe ser entera (recibido {frequency}).")


# --- PERFILES PERIÓDICOS ---

@dataclass(frozen=True)
class ShearProfile:
    """
    g(s) = a·(cos(2π(s+φ)) + 1) + w·sin²(4π(s+φ))·(sin(6π(s+φ)) + m·cos(2πk(s+φ)))

    Con ``wiggle=0`` queda el perfil sin perturbar; con a=½ y las constantes
    adecuadas da las cizallas P y Q de los ejemplos.
    """
    amplitude: float = 0.5
    phase: float = 0.0
    wiggle: float = 0.0
    mix: float = 0.0
    frequency: int = 13

    def __post_init__(self):
        _check_finite('ShearProfile', amplitude=self.amplitude, phase=self.phase,
                      wiggle=self.wiggle, mix=self.mix)
        _check_frequency('ShearProfile', self.frequency)

    def __call__(self, s):
        s = s + self.phase
        values = self.amplitude * (np.cos(TWO_PI * s) + 1.0)
        if self.wiggle:
            values = values + self.wiggle * np.sin(2.0 * TWO_PI * s) ** 2 * (
                np.sin(3.0 * TWO_PI * s) + self.mix * np.cos(self.frequency * TWO_PI * s)
            )
        return values

    def describe(self):
        return {
            'amplitude': self.amplitude,
            'phase': self.phase,
            'wiggle': self.wiggle,
            'mix': self.mix,
            'frequency': self.frequency,
        }


@dataclass(frozen=True)
class TrigTerm:
    """c·sin(2πk(v+φ)) o c·cos(2πk(v+φ)), con v la coordenada x o y."""
    coefficient: float
    function: str = 'sin'
    variable: str = 'x'
    frequency: int = 1
    phase: float = 0.0

    def __post_init__(self):
        _check_finite('TrigTerm', coefficient=self.coefficient, phase=self.phase)
        _check_frequency('TrigTerm', self.frequency)
        if self.function not in ('sin', 'cos'):
            raise InvalidParameter(f"TrigTerm: función desconocida '{self.function}'.")
        if self.variable not in ('x', 'y'):
            raise InvalidParameter(f"TrigTerm: variable desconocida '{self.variable}'.")

    def __call__(self, x, y):
        v = x if self.variable == 'x' else y
        trig = np.sin if self.function == 'sin' else np.cos
        return self.coefficient * trig(self.frequency * TWO_PI * (v + self.phase))

    def describe(self):
        return {
            'coefficient': self.coefficient,
            'function': self.function,
            'variable': self.variable,
            'frequency': self.frequency,
            'phase': self.phase,
        }


# --- LEVANTAMIENTOS ---

class LiftedMap(ABC):
    """Levantamiento de un homeomorfismo del toro. Inmutable y sin estado."""

    kind: ClassVar[MapKind]

    @abstractmethod
    def apply(self, x, y):
        """Devuelve F(x, y) como par (x', y')."""

    def apply_inverse(self, x, y):
        raise NotInvertible(f"El tipo '{self.kind}' no tiene inversa explícita.")

    @property
    def invertible(self):
        return False

    @property
    def constant_displacement(self):
        """Desplazamiento si es constante en todo el toro (traslaciones), si no None."""
        return None

    @abstractmethod
    def describe(self):
        """Descripción estructural serializable."""

    def __call__(self, point):
        point = np.asarray(point, dtype=float)
        x, y = self.apply(point[..., 0], point[..., 1])
        return np.stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)], axis=-1)


@dataclass(frozen=True)
class Identity(LiftedMap):
    kind: ClassVar[MapKind] = MapKind.IDENTITY

    def apply(self, x, y):
        return x, y

    def apply_inverse(self, x, y):
        return x, y

    @property
    def invertible(self):
        return True

    @property
    def constant_displacement(self):
        return (0.0, 0.0)

    def describe(self):
        return {'kind': str(self.kind)}


@dataclass(frozen=True)
class Translation(LiftedMap):
    dx: float = 0.0
    dy: float = 0.0
    kind: ClassVar[MapKind] = MapKind.TRANSLATION

    def __post_init__(self):
        _check_finite('Translation', dx=self.dx, dy=self.dy)

    def apply(self, x, y):
        return x + self.dx, y + self.dy

    def apply_inverse(self, x, y):
        return x - self.dx, y - self.dy

    @property
    def invertible(self):
        return True

    @property
    def constant_displacement(self):
        return (self.dx, self.dy)

    def describe(self):
        return {'kind': str(self.kind), 'dx': self.dx, 'dy': self.dy}


@dataclass(frozen=True)
class ShearX(LiftedMap):
    """(x, y) -> (x + g(y), y)."""
    profile: ShearProfile = field(default_factory=ShearProfile)
    kind: ClassVar[MapKind] = MapKind.SHEAR_X

    def apply(self, x, y):
        return x + self.profile(y), y

    def apply_inverse(self, x, y):
        return x - self.profile(y), y

    @property
    def invertible(self):
        return True

    def describe(self):
        return {'kind': str(self.kind), **self.profile.describe()}


@dataclass(frozen=True)
class ShearY(LiftedMap):
    """(x, y) -> (x, y + g(x))."""
    profile: ShearProfile = field(default_factory=ShearProfile)
    kind: ClassVar[MapKind] = MapKind.SHEAR_Y

    def apply(self, x, y):
        return x, y + self.profile(x)

    def apply_inverse(self, x, y):
        return x, y - self.profile(x)

    @property
    def invertible(self):
        return True

    def describe(self):
        return {'kind': str(self.kind), **self.profile.describe()}


@dataclass(frozen=True)
class Perturbation(LiftedMap):
    """
    (x, y) -> (x + Σ terms_x(x, y), y + Σ terms_y(x, y)), todos los términos
    evaluados en el punto de partida. Sin inversa explícita.
    """
    terms_x: tuple = ()
    terms_y: tuple = ()
    kind: ClassVar[MapKind] = MapKind.PERTURBATION_R

    def apply(self, x, y):
        new_x = x
        for term in self.terms_x:
            new_x = new_x + term(x, y)
        new_y = y
        for term in self.terms_y:
            new_y = new_y + term(x, y)
        return new_x, new_y

    def describe(self):
        return {
            'kind': str(self.kind),
            'terms_x': [term.describe() for term in self.terms_x],
            'terms_y': [term.describe() for term in self.terms_y],
        }


@dataclass(frozen=True)
class CircleTwist(LiftedMap):
    """
    (x, y) -> (x + a·cos(2πy), y + d·sin(2πy)).

    Los círculos y=0 e y=½ son invariantes. La componente vertical
    t -> t + d·sin(2πt) es estrictamente creciente si |2πd| < 1, y la inversa
    la resuelve numéricamente; la horizontal se deshace en forma cerrada.
    """
    amplitude: float = 1.0
    drift: float = 0.01
    kind: ClassVar[MapKind] = MapKind.TWIST

    def __post_init__(self):
        _check_finite('CircleTwist', amplitude=self.amplitude, drift=self.drift)
        if abs(TWO_PI * self.drift) >= 1.0:
            raise InvalidParameter(
                f"CircleTwist: hace falta |2π·drift| < 1 para que el mapa sea invertible (recibido {self.drift})."
            )

    def apply(self, x, y):
        return x + self.amplitude * np.cos(TWO_PI * y), y + self.drift * np.sin(TWO_PI * y)

    def _vertical_preimage(self, target):
        if not self.drift:
            return target
        # t + d·sin(2πt) se aleja de t como mucho |d|: la raíz queda en ese intervalo.
        width = abs(self.drift)
        return brentq(
            lambda t: t + self.drift * math.sin(TWO_PI * t) - target,
            target - width, target + width, xtol=1e-15,
        )

    def apply_inverse(self, x, y):
        targets = np.asarray(y, dtype=float)
        # Los no finitos se propagan como NaN y los detecta quien itera.
        previous = np.array([
            self._vertical_preimage(float(value)) if math.isfinite(value) else math.nan
            for value in targets.ravel()
        ])
        previous = previous.reshape(targets.shape)
        new_x = x - self.amplitude * np.cos(TWO_PI * previous)
        if previous.ndim == 0:
            return float(new_x), float(previous)
        return new_x, previous

    @property
    def invertible(self):
        return True

    def describe(self):
        return {'kind': str(self.kind), 'amplitude': self.amplitude, 'drift': self.drift}


@dataclass(frozen=True)
class Composite(LiftedMap):
    """Aplica ``factors`` en orden: g_k(...g_1(x)...). Sin factores es la identidad."""
    factors: tuple = ()
    kind: ClassVar[MapKind] = MapKind.COMPOSITE

    def apply(self, x, y):
        for factor in self.factors:
            x, y = factor.apply(x, y)
        return x, y

    def apply_inverse(self, x, y):
        if not self.invertible:
            raise NotInvertible("La composición contiene un factor sin inversa explícita.")
        for factor in reversed(self.factors):
            x, y = factor.apply_inverse(x, y)
        return x, y

    @property
    def invertible(self):
        return all(factor.invertible for factor in self.factors)

    @property
    def constant_displacement(self):
        total_x, total_y = 0.0, 0.0
        for factor in self.factors:
            shift = factor.constant_displacement
            if shift is None:
                return None
            total_x += shift[0]
            total_y += shift[1]
        return (total_x, total_y)

    def describe(self):
        return {'kind': str(self.kind), 'factors': [factor.describe() for factor in self.factors]}


@dataclass(frozen=True)
class Power(LiftedMap):
    base: LiftedMap
    exponent: int = 1
    kind: ClassVar[MapKind] = MapKind.POWER

    def __post_init__(self):
        if int(self.exponent) != self.exponent or self.exponent < 1:
            raise InvalidParameter(f"Power: el exponente debe ser un entero >= 1 (recibido {self.exponent}).")

    def apply(self, x, y):
        for _ in range(self.exponent):
            x, y = self.base.apply(x, y)
        return x, y

    def apply_inverse(self, x, y):
        if not self.base.invertible:
            raise NotInvertible("Potencia de un levantamiento sin inversa explícita.")
        for _ in range(self.exponent):
            x, y = self.base.apply_inverse(x, y)
        return x, y

    @property
    def invertible(self):
        return self.base.invertible

    @property
    def constant_displacement(self):
        shift = self.base.constant_displacement
        if shift is None:
            return None
        return (self.exponent * shift[0], self.exponent * shift[1])

    def describe(self):
        return {'kind': str(self.kind), 'exponent': self.exponent, 'base': self.base.describe()}


@dataclass(frozen=True)
class Inverse(LiftedMap):
    base: LiftedMap
    kind: ClassVar[MapKind] = MapKind.INVERSE

    def __post_init__(self):
        if not self.base.invertible:
            raise NotInvertible(f"El tipo '{self.base.kind}' no tiene inversa explícita.")

    def apply(self, x, y):
        return self.base.apply_inverse(x, y)

    def apply_inverse(self, x, y):
        return self.base.apply(x, y)

    @property
    def invertible(self):
        return True

    @property
    def constant_displacement(self):
        shift = self.base.constant_displacement
        if shift is None:
            return None
        return (-shift[0], -shift[1])

    def describe(self):
        return {'kind': str(self.kind), 'base': self.base.describe()}


# --- OPERACIONES ---

def eval_lift(lift, point):
    """F(x̃) para un punto de R²."""
    x, y = lift.apply(float(point[0]), float(point[1]))
    return np.array([x, y], dtype=float)


def displacement(lift, torus_point):
    """
    D(F)(x) = F(x̃) - x̃ con el levantamiento canónico x̃ = x ∈ [0,1)².
    Acepta un punto o un array (..., 2) de puntos.
    """
    points = np.asarray(torus_point, dtype=float)
    x, y = lift.apply(points[..., 0], points[..., 1])
    return np.stack([np.asarray(x) - points[..., 0], np.asarray(y) - points[..., 1]], axis=-1)


def compose(outer, inner):
    """outer ∘ inner. Las composiciones anidadas se aplanan."""
    factors = []
    for part in (inner, outer):
        if isinstance(part, Composite):
            factors.extend(part.factors)
        else:
            factors.append(part)
    return Composite(tuple(factors))


def power(lift, q):
    return Power(lift, q)


def inverse(lift):
    if isinstance(lift, Inverse):
        return lift.base
    return Inverse(lift)


def conjugate(h, lift):
    """h ∘ F ∘ h⁻¹ (h debe tener inversa explícita)."""
    return compose(h, compose(lift, inverse(h)))


# --- MAPAS PREDEFINIDOS ---

@dataclass(frozen=True)
class BuiltinSpec:
    factory: Callable
    defaults: dict
    positional: tuple = ()
    description: str = ''


def _shear_p(alpha=ALPHA, amplitude=0.5, wiggle=0.0234, mix=0.3754, frequency=13):
    return ShearY(ShearProfile(amplitude, alpha, wiggle, mix, frequency))


def _shear_q(beta=BETA, amplitude=0.5, wiggle=0.0213, mix=0.4243, frequency=11):
    return ShearX(ShearProfile(amplitude, beta, wiggle, mix, frequency))


def _perturbation_r(alpha=ALPHA, beta=BETA, r_x=0.0127, r_xy=0.000824, r_y=0.0176, r_yy=0.000631):
    return Perturbation(
        terms_x=(
            TrigTerm(-r_x, 'sin', 'x', 2, alpha),
            TrigTerm(r_xy, 'sin', 'y', 5),
        ),
        terms_y=(
            TrigTerm(-r_y, 'sin', 'y', 2, beta),
            TrigTerm(r_yy, 'sin', 'y', 6),
        ),
    )


def _example2(amplitude=1.0):
    return Perturbation(terms_x=(TrigTerm(amplitude, 'cos', 'x', 1),))


def _example3(amplitude=1.0, drift=0.01):
    return CircleTwist(amplitude, drift)


def _f1(alpha=ALPHA, beta=BETA):
    return compose(_shear_q(beta=beta), _shear_p(alpha=alpha))


def _f2(alpha=ALPHA, beta=BETA):
    return compose(_perturbation_r(alpha=alpha, beta=beta), _f1(alpha=alpha, beta=beta))


def _f0(alpha=ALPHA, beta=BETA):
    return compose(_shear_q(beta=beta, wiggle=0.0), _shear_p(alpha=alpha, wiggle=0.0))


BUILTINS = {
    'identity': BuiltinSpec(lambda: Identity(), {}, (), 'Identidad.'),
    'translation': BuiltinSpec(
        lambda dx=0.0, dy=0.0: Translation(dx, dy), {'dx': 0.0, 'dy': 0.0}, ('dx', 'dy'),
        'Traslación por (dx, dy).'),
    'example2': BuiltinSpec(
        _example2, {'amplitude': 1.0}, ('amplitude',),
        'F(x,y) = (x + cos(2πx), y).'),
    'example3': BuiltinSpec(
        _example3, {'amplitude': 1.0, 'drift': 0.01}, ('amplitude', 'drift'),
        'F(x,y) = (x + cos(2πy), y + sin(2πy)/100).'),
    'p': BuiltinSpec(
        _shear_p, {'alpha': ALPHA, 'amplitude': 0.5, 'wiggle': 0.0234, 'mix': 0.3754, 'frequency': 13},
        ('alpha',), 'Cizalla vertical P.'),
    'q': BuiltinSpec(
        _shear_q, {'beta': BETA, 'amplitude': 0.5, 'wiggle': 0.0213, 'mix': 0.4243, 'frequency': 11},
        ('beta',), 'Cizalla horizontal Q.'),
    'r': BuiltinSpec(
        _perturbation_r,
        {'alpha': ALPHA, 'beta': BETA, 'r_x': 0.0127, 'r_xy': 0.000824, 'r_y': 0.0176, 'r_yy': 0.000631},
        ('alpha', 'beta'), 'Perturbación disipativa R.'),
    'p_tilde': BuiltinSpec(
        lambda alpha=ALPHA: _shear_p(alpha=alpha, wiggle=0.0), {'alpha': ALPHA}, ('alpha',),
        'P sin los términos de perturbación.'),
    'q_tilde': BuiltinSpec(
        lambda beta=BETA: _shear_q(beta=beta, wiggle=0.0), {'beta': BETA}, ('beta',),
        'Q sin los términos de perturbación.'),
    'f0': BuiltinSpec(_f0, {'alpha': ALPHA, 'beta': BETA}, ('alpha', 'beta'), 'Q̃ ∘ P̃.'),
    'f1': BuiltinSpec(_f1, {'alpha': ALPHA, 'beta': BETA}, ('alpha', 'beta'), 'Q ∘ P (conservativo).'),
    'f2': BuiltinSpec(_f2, {'alpha': ALPHA, 'beta': BETA}, ('alpha', 'beta'), 'R ∘ Q ∘ P (disipativo).'),
}


def builtin(name, overrides=None):
    """Mapa predefinido con las constantes publicadas salvo las que se sobrescriban."""
    spec = BUILTINS.get(str(name).lower())
    if spec is None:
        raise UnknownMap(f"Mapa desconocido '{name}'. Disponibles: {', '.join(sorted(BUILTINS))}.")
    overrides = dict(overrides or {})
    unknown = set(overrides) - set(spec.defaults)
    if unknown:
        raise InvalidParameter(f"El mapa '{name}' no acepta los parámetros: {', '.join(sorted(unknown))}.")
    params = {**spec.defaults, **{key: float(value) for key, value in overrides.items()}}
    if 'frequency' in params:
        _check_frequency(name, params['frequency'])
        params['frequency'] = int(params['frequency'])
    logger.debug("Construyendo el mapa %s con %s", name, params)
    return spec.factory(**params)
