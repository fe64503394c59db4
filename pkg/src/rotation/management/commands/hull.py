from rotation.exceptions import ConfigError
from rotation.reports import read_vectors
from rotation.runs import hull_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Envolvente convexa y distancia de Hausdorff de los vectores de un CSV escrito por otro comando."
    command = 'hull'
    defaults = {'input': None, 'check': None, 'tolerance': None}
    uses_map = False

    def add_command_arguments(self, parser):
        parser.add_argument('--input', help="CSV de ciclos, vectores o muestras.")
        parser.add_argument('--tolerance', type=float,
                            help="Radio del entorno de la referencia (activa la comprobación).")
        parser.add_argument('--check', choices=('square', 'square_vertices'),
                            help="Comprobación frente a [0,1]² (y sus vértices).")

    def run(self, config, options):
        if not options.get('input'):
            raise ConfigError("Falta --input.")
        points, source = read_vectors(options['input'])
        if len(points) == 0:
            raise ConfigError(f"{options['input']} no contiene vectores.")
        return hull_run(points, source, config,
                        tolerance=self.tolerance(options), check=self.requested_check(options))
