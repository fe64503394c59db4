from django.conf import settings

from rotation.runs import mean_run

from ._common import RotationCommand


class Command(RotationCommand):
    help = "Vector de rotación medio (integral del desplazamiento, regla del punto medio)."
    command = 'mean'
    integer_options = ('quadrature',)
    defaults = {'map': 'f1'}

    def add_command_arguments(self, parser):
        parser.add_argument('--quadrature', type=int, help="Lado m de la cuadrícula de cuadratura (por defecto 1024).")

    def run(self, config, options):
        side = config.params['quadrature']
        if side is None:
            side = settings.ROTATION_DEFAULT_QUADRATURE
        report = mean_run(config.map.build(), side, config)
        vx, vy = report.vectors[0]
        self.stdout.write(f"Vector de rotación medio: ({vx:.12f}, {vy:.12f})")
        return report
