"""Base compartida por los comandos de conjuntos de rotación."""

import logging

from django.core.management.base import BaseCommand, CommandError

from rotation.config import REFERENCES, RunConfig, load_config_file
from rotation.exceptions import ConfigError, RotationError
from rotation.presets import CHECKS

logger = logging.getLogger('rotation.commands')

MAP_KEYS = ('map', 'param', 'power', 'inverse')
SHARED_KEYS = MAP_KEYS + ('workers', 'outdir', 'label', 'no_plot', 'reference')


class RotationCommand(BaseCommand):
    command = ''
    # Opciones enteras propias del comando (se validan en RunConfig).
    integer_options = ()
    defaults = {}
    # Los comandos que no iteran ningún mapa no aceptan las opciones del mapa.
    uses_map = True

    def add_arguments(self, parser):
        parser.add_argument('--config', help="Fichero 'clave = valor' con cualquiera de las opciones.")
        if self.uses_map:
            self.add_map_arguments(parser)
        parser.add_argument('--workers', type=int, help="Hilos de cálculo (no cambia los resultados).")
        parser.add_argument('--outdir', help="Directorio de salida (por defecto ROTATION_OUTPUT_DIR).")
        parser.add_argument('--label', help="Subdirectorio de esta ejecución.")
        parser.add_argument('--no-plot', action='store_true', default=None, help="No escribe el SVG.")
        parser.add_argument('--reference', choices=REFERENCES, help="Región de referencia para la distancia de Hausdorff.")
        self.add_command_arguments(parser)

    def add_map_arguments(self, parser):
        parser.add_argument('--map', help="Mapa: nombre, nombre:v1,v2 o nombre:k=v,... (p. ej. f1, translation:0.25,0.25).")
        parser.add_argument('--param', action='append', help="Sobrescribe un parámetro del mapa (k=v). Repetible.")
        parser.add_argument('--power', type=int, help="Itera el mapa q veces (F^q).")
        parser.add_argument('--inverse', action='store_true', default=None, help="Usa la inversa explícita del mapa.")

    def add_command_arguments(self, parser):
        pass

    def allowed_keys(self):
        shared = set(SHARED_KEYS) if self.uses_map else set(SHARED_KEYS) - set(MAP_KEYS)
        return shared | set(self.defaults) | set(self.integer_options)

    def merge_options(self, options):
        """Valores por defecto < fichero de configuración < opciones."""
        merged = dict(self.defaults)
        if options.get('config'):
            merged.update(load_config_file(options['config'], self.allowed_keys()))
        for key in self.allowed_keys():
            if options.get(key) is not None:
                merged[key] = options[key]
        return merged

    def handle(self, *args, **options):
        try:
            merged = self.merge_options(options)
            config = RunConfig.from_options(self.command, merged, self.integer_options, uses_map=self.uses_map)
            logger.info("%s: %s", self.command, config.describe())
            report = self.run(config, merged)
        except RotationError as exc:
            logger.debug("%s falló: %s", self.command, exc)
            raise CommandError(str(exc)) from exc
        except OSError as exc:
            raise CommandError(f"Error de entrada/salida: {exc}") from exc
        self.finish(report, config)

    def tolerance(self, options):
        value = options.get('tolerance')
        if value is None:
            return None
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"'tolerance' debe ser un número (recibido '{value}').") from None
        if not value >= 0:
            raise ConfigError(f"'tolerance' debe ser >= 0 (recibido {value}).")
        return value

    def requested_check(self, options):
        """Par (nombre, función) de la comprobación pedida o None."""
        name = options.get('check')
        if not name:
            return None
        if name not in CHECKS:
            raise ConfigError(f"Comprobación desconocida '{name}'. Opciones: {', '.join(CHECKS)}.")
        return name, CHECKS[name]

    def run(self, config, options):
        raise NotImplementedError('Subclasses of RotationCommand must provide a run() method')

    def finish(self, report, config):
        self.stdout.write(f"Vectores: {len(report.vectors)}")
        if report.hausdorff is not None:
            self.stdout.write(f"Hausdorff (envolvente vs {report.reference}): {report.hausdorff:.6f}")
        self.stdout.write(f"Resultados en {config.run_dir}")
        failed = [name for name, check in report.checks.items() if not check['passed']]
        if failed:
            raise CommandError(f"Comprobación fallida: {', '.join(failed)}.")
        if report.checks:
            self.stdout.write(self.style.SUCCESS("Comprobaciones superadas."))
