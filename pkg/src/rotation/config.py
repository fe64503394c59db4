"""
Configuración de las ejecuciones: descripción de mapas, ficheros clave-valor
y RunConfig validado antes de calcular nada.
"""

import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from django.conf import settings

from .exceptions import ConfigError, InvalidParameter, NotInvertible, UnknownMap
from .torus_maps import BUILTINS, builtin, inverse, power

logger = logging.getLogger(__name__)

REFERENCES = ('none', 'unit-square', 'segment-x')


@dataclass(frozen=True)
class MapSpec:
    """Nombre de un mapa predefinido, sus parámetros y los envoltorios potencia/inversa."""
    name: str
    overrides: dict = field(default_factory=dict)
    power: int = 1
    inverse: bool = False

    @classmethod
    def parse(cls, text, params=(), power=1, inverse=False):
        """
        ``name``, ``name:v1,v2`` (parámetros posicionales) o ``name:k=v,k=v``.
        ``params`` son pares 'k=v' adicionales que tienen prioridad.
        """
        text = (text or '').strip()
        if not text:
            raise ConfigError("Falta la descripción del mapa.")
        name, _, rest = text.partition(':')
        name = name.strip()
        spec = BUILTINS.get(name.lower())
        if spec is None:
            raise UnknownMap(f"Mapa desconocido '{name}'. Disponibles: {', '.join(sorted(BUILTINS))}.")
        overrides = {}
        items = [item.strip() for item in rest.split(',') if item.strip()] if rest else []
        for position, item in enumerate(items):
            if '=' in item:
                key, value = _split_pair(item)
            elif position < len(spec.positional):
                key, value = spec.positional[position], item
            else:
                raise ConfigError(f"Demasiados parámetros posicionales para '{name}': {item}.")
            overrides[key] = _as_float(key, value)
        for item in params:
            key, value = _split_pair(item)
            overrides[key] = _as_float(key, value)
        return cls(name, overrides, int(power), bool(inverse))

    def build(self):
        lift = builtin(self.name, self.overrides)
        if self.power != 1:
            lift = power(lift, self.power)
        if self.inverse:
            lift = inverse(lift)
        return lift

    def label(self):
        parts = [self.name]
        parts += [f"{key}={value:g}" for key, value in sorted(self.overrides.items())]
        text = '_'.join(parts)
        if self.power != 1:
            text += f"_pow{self.power}"
        if self.inverse:
            text += '_inv'
        return text

    def describe(self):
        return asdict(self)


def _split_pair(item):
    key, sep, value = item.partition('=')
    if not sep or not key.strip():
        raise ConfigError(f"Se esperaba 'clave=valor' y se recibió '{item}'.")
    return key.strip(), value.strip()


def _as_float(key, value):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"El parámetro '{key}' no es numérico: '{value}'.") from None


# --- FICHEROS DE CONFIGURACIÓN ---

def load_config_file(path, allowed):
    """
    Lee líneas 'clave = valor' (con comentarios '#'). Las claves usan los
    nombres largos de las opciones, con guiones o guiones bajos. ``param``
    puede repetirse.
    """
    values = {}
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigError(f"No se puede leer el fichero de configuración {path}: {exc}") from exc
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip().replace('-', '_')
        if not sep or not key:
            raise ConfigError(f"{path}:{number}: se esperaba 'clave = valor'.")
        if key not in allowed:
            raise ConfigError(f"{path}:{number}: clave desconocida '{key}'.")
        value = value.strip()
        if key == 'param':
            values.setdefault('param', []).append(value)
        else:
            values[key] = value
    logger.debug("Configuración leída de %s: %s", path, sorted(values))
    return values


# --- CONFIGURACIÓN VALIDADA ---

def _int(options, key, minimum=1):
    value = options.get(key)
    if value is None:
        return None
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"'{key}' debe ser un entero (recibido '{value}').") from None
    if number < minimum:
        raise ConfigError(f"'{key}' debe ser >= {minimum} (recibido {number}).")
    return number


def as_bool(value):
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ('1', 'true', 'yes', 'on', 'si', 'sí')


@dataclass(frozen=True)
class RunConfig:
    command: str
    map: MapSpec | None
    params: dict
    outdir: Path
    label: str
    workers: int
    plot: bool = True
    reference: str = 'none'

    @classmethod
    def from_options(cls, command, options, integer_keys=(), uses_map=True):
        """
        ``options`` ya mezcla valores por defecto, fichero y opciones (en ese
        orden de prioridad creciente). Valida rangos y tipos. Con
        ``uses_map=False`` no se lee ningún mapa y ``map`` queda en None.
        """
        map_spec = cls._map_spec(options) if uses_map else None
        params = {}
        for key in integer_keys:
            minimum = 0 if key == 'seed' else 1
            params[key] = _int(options, key, minimum)
        reference = options.get('reference') or 'none'
        if reference not in REFERENCES:
            raise ConfigError(f"Referencia desconocida '{reference}'. Opciones: {', '.join(REFERENCES)}.")
        outdir = Path(options.get('outdir') or settings.ROTATION_OUTPUT_DIR)
        label = options.get('label') or (f"{command}-{map_spec.label()}" if map_spec else command)
        return cls(
            command=command,
            map=map_spec,
            params=params,
            outdir=outdir,
            label=label,
            workers=_int(options, 'workers') or settings.ROTATION_DEFAULT_WORKERS,
            plot=not as_bool(options.get('no_plot', False)),
            reference=reference,
        )

    @staticmethod
    def _map_spec(options):
        try:
            map_spec = MapSpec.parse(
                options.get('map'),
                params=options.get('param') or (),
                power=_int(options, 'power') or 1,
                inverse=as_bool(options.get('inverse', False)),
            )
            # Construirlo ya valida los parámetros y la inversa.
            map_spec.build()
        except (InvalidParameter, NotInvertible) as exc:
            raise ConfigError(str(exc)) from exc
        return map_spec

    @property
    def run_dir(self):
        return self.outdir / self.label

    def describe(self):
        description = {'command': self.command}
        if self.map is not None:
            description['map'] = self.map.describe()
        description.update({
            'params': dict(self.params),
            'workers': self.workers,
            'plot': self.plot,
            'reference': self.reference,
            'outdir': str(self.outdir),
            'label': self.label,
        })
        return description
