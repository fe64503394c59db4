from django.conf import settings

from rotation.exceptions import ConfigError
from rotation.observable import SamplingPlan
from rotation.runs import observable_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Conjunto de rotación observable por segmentos de órbita (puntos aleatorios o en cuadrícula)."
    command = 'observable'
    integer_options = ('random', 'grid', 'length', 'seed')
    defaults = {'map': 'f1', 'check': None, 'tolerance': None}

    def add_command_arguments(self, parser):
        start = parser.add_mutually_exclusive_group()
        start.add_argument('--random', type=int, help="Número de puntos iniciales aleatorios (por defecto 1000).")
        start.add_argument('--grid', type=int, help="Lado de la cuadrícula de puntos iniciales.")
        parser.add_argument('--length', type=int, help="Longitud T de cada segmento (por defecto 1000).")
        parser.add_argument('--seed', type=int, help="Semilla de 64 bits de los puntos aleatorios.")
        parser.add_argument('--check', choices=('centre', 'five_clusters'),
                            help="Comprobación de agrupamiento de los vectores.")
        parser.add_argument('--tolerance', type=float, help="Tolerancia frente a la región de referencia.")

    def run(self, config, options):
        params = config.params
        # argparse solo las excluye en la línea de órdenes; el fichero puede traer las dos.
        if params['grid'] is not None and params['random'] is not None:
            raise ConfigError("'grid' y 'random' son incompatibles: elige un modo de muestreo.")
        length = settings.ROTATION_DEFAULT_LENGTH if params['length'] is None else params['length']
        if params['grid'] is not None:
            plan = SamplingPlan.grid(params['grid'], length)
        else:
            count = 1000 if params['random'] is None else params['random']
            plan = SamplingPlan.random(count, length, params['seed'])
        return observable_run(
            config.map.build(), plan, config,
            tolerance=self.tolerance(options),
            check=self.requested_check(options),
        )
