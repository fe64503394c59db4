from django.conf import settings

from rotation.config import as_bool
from rotation.exceptions import ConfigError
from rotation.observable import SamplingPlan
from rotation.presets import CHECKS, FIGURES, figure_preset
from rotation.runs import asymptotic_run, discretized_run, observable_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Reproduce una figura de la tabla de figuras (1..9) con sus parámetros y su comprobación."
    command = 'reproduce'
    integer_options = ('seed',)
    defaults = {'figure': None, 'scale': None, 'full': None}

    def add_command_arguments(self, parser):
        parser.add_argument('figure', type=int, choices=sorted(FIGURES), help="Número de figura.")
        parser.add_argument('--full', action='store_true', default=None,
                            help="Parámetros completos de la figura aunque tarden horas (sin aprobado/suspenso).")
        parser.add_argument('--scale', type=float, help="Escala los tamaños de la figura (las comprobaciones se omiten).")
        parser.add_argument('--seed', type=int, help="Semilla de los puntos aleatorios.")

    def merge_options(self, options):
        preset = figure_preset(options.get('figure'))
        merged = super().merge_options(options)
        merged.setdefault('map', preset.map)
        merged.setdefault('label', f"fig{preset.figure}")
        merged.setdefault('reference', 'unit-square')
        return merged

    def run(self, config, options):
        preset = figure_preset(options['figure'])
        full = as_bool(options.get('full') or False)
        try:
            scale = 1.0 if options.get('scale') is None else float(options['scale'])
        except ValueError:
            raise ConfigError(f"'scale' debe ser un número (recibido '{options['scale']}').") from None
        if not scale > 0:
            raise ConfigError(f"'scale' debe ser > 0 (recibido {scale}).")
        params = preset.parameters(full, scale)
        check = None
        if preset.check and scale == 1.0 and not (full and preset.full_only):
            check = (preset.check, CHECKS[preset.check])
        extra = {'figure': {
            'number': preset.figure,
            'caption': preset.caption,
            'parameters': params,
            'full': full,
            'scale': scale,
        }}
        self.stdout.write(f"Figura {preset.figure}: {preset.caption}")
        lift = config.map.build()
        if preset.method == 'observable':
            length = params['length']
            if params['mode'] == 'grid':
                plan = SamplingPlan.grid(params['side'], length)
            else:
                seed = config.params['seed']
                plan = SamplingPlan.random(params['count'], length,
                                           settings.ROTATION_DEFAULT_SEED if seed is None else seed)
            return observable_run(lift, plan, config, check=check, extra=extra)
        if preset.method == 'discretized':
            return discretized_run(lift, params['n'], config, check=check, extra=extra)
        return asymptotic_run(lift, params['n_min'], params['n_max'], params['step'], config,
                              check=check, extra=extra)
