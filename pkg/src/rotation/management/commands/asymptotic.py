from rotation.exceptions import ConfigError
from rotation.runs import asymptotic_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Conjunto de rotación discretizado asintótico: unión sobre las cuadrículas n_min..n_max."
    command = 'asymptotic'
    integer_options = ('n_min', 'n_max', 'step')
    defaults = {'map': 'f1', 'check': None, 'step': 1, 'tolerance': None}

    def add_command_arguments(self, parser):
        parser.add_argument('--n-min', type=int, help="Lado mínimo de la cuadrícula.")
        parser.add_argument('--n-max', type=int, help="Lado máximo de la cuadrícula.")
        parser.add_argument('--step', type=int, help="Paso entre lados (por defecto 1).")
        parser.add_argument('--tolerance', type=float,
                            help="Tolerancia de Hausdorff frente a la referencia (activa la comprobación).")
        parser.add_argument('--check', choices=('square', 'square_vertices'),
                            help="Comprobación frente a [0,1]² (y sus vértices).")

    def run(self, config, options):
        params = config.params
        if params['n_min'] is None or params['n_max'] is None:
            raise ConfigError("Faltan --n-min y --n-max.")
        if params['n_min'] > params['n_max']:
            raise ConfigError("--n-min no puede ser mayor que --n-max.")
        return asymptotic_run(config.map.build(), params['n_min'], params['n_max'], params['step'],
                              config, tolerance=self.tolerance(options), check=self.requested_check(options))
