from rotation.exceptions import ConfigError
from rotation.runs import discretized_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Conjunto de rotación discretizado: ciclos de f_n = P_n ∘ f sobre la cuadrícula n×n."
    command = 'discretized'
    integer_options = ('n',)
    defaults = {'map': 'f1', 'check': None, 'tolerance': None}

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, help="Lado de la cuadrícula.")
        parser.add_argument('--tolerance', type=float,
                            help="Tolerancia de Hausdorff frente a la referencia (activa la comprobación).")
        parser.add_argument('--check', choices=('square', 'square_vertices'),
                            help="Comprobación frente a [0,1]² (y sus vértices).")

    def run(self, config, options):
        n = config.params['n']
        if n is None:
            raise ConfigError("Falta --n.")
        return discretized_run(config.map.build(), n, config,
                               tolerance=self.tolerance(options), check=self.requested_check(options))
