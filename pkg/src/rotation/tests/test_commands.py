import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.outdir = Path(directory.name)

    def call(self, *args, **options):
        out = StringIO()
        options.setdefault('no_plot', True)
        call_command(*args, outdir=str(self.outdir), stdout=out, **options)
        return out.getvalue()

    def report(self, label):
        return json.loads((self.outdir / label / 'report.json').read_text(encoding='utf-8'))


class DiscretizedCommandTests(CommandTestCase):

    def test_identity(self):
        output = self.call('discretized', map='identity', n=4, label='id')
        self.assertIn('Vectores: 1', output)
        report = self.report('id')
        self.assertEqual(report['kind'], 'rational')
        self.assertEqual(report['vectors'], [['0', '0']])
        self.assertEqual(report['summary']['cycles'], 16)
        self.assertEqual(report['config']['params'], {'n': 4})
        rows = (self.outdir / 'id' / 'cycles.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(rows), 17)

    def test_default_label_and_plot(self):
        self.call('discretized', map='translation:0.5', n=4, no_plot=False)
        run_dir = self.outdir / 'discretized-translation_dx=0.5'
        self.assertTrue((run_dir / 'scatter.svg').exists())

    def test_failed_check_exits_with_error(self):
        with self.assertRaisesMessage(CommandError, 'square'):
            self.call('discretized', map='identity', n=4, check='square', label='bad')
        self.assertFalse(self.report('bad')['passed'])

    def test_tolerance_against_reference(self):
        output = self.call('discretized', map='example2', n=50, reference='segment-x', tolerance=0.1, label='ex2')
        self.assertIn('Comprobaciones superadas', output)
        report = self.report('ex2')
        self.assertEqual(report['hausdorff'], 0.0)
        self.assertTrue(report['checks']['neighborhood']['passed'])

    def test_missing_side(self):
        with self.assertRaisesMessage(CommandError, '--n'):
            self.call('discretized', map='f1')

    def test_bad_map(self):
        with self.assertRaisesMessage(CommandError, 'Mapa desconocido'):
            self.call('discretized', map='arnold', n=4)
        with self.assertRaises(CommandError):
            self.call('discretized', map='f2', n=4, inverse=True)

    def test_config_file(self):
        path = self.outdir / 'run.conf'
        path.write_text("map = translation\nparam = dx=0.5\nn = 4\nlabel = from-file\n", encoding='utf-8')
        self.call('discretized', config=str(path))
        self.assertEqual(self.report('from-file')['vectors'], [['1/2', '0']])

    def test_options_override_config_file(self):
        path = self.outdir / 'run.conf'
        path.write_text("map = translation:0.5\nn = 4\n", encoding='utf-8')
        self.call('discretized', config=str(path), n=2, label='override')
        self.assertEqual(self.report('override')['summary']['n'], 2)


class ObservableCommandTests(CommandTestCase):

    def test_random_with_check(self):
        output = self.call('observable', map='translation:0.5,0.5', random=10, length=5, check='centre', label='obs')
        self.assertIn('Comprobaciones superadas', output)
        report = self.report('obs')
        self.assertEqual(report['vectors'], [[0.5, 0.5]] * 10)
        self.assertEqual(report['plan']['seed'], 1)
        rows = (self.outdir / 'obs' / 'samples.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual(rows[0], 'start_x,start_y,T,vx,vy')
        self.assertEqual(len(rows), 11)

    def test_identity_vectors_are_zero(self):
        self.call('observable', map='identity', random=10, length=5, label='zero')
        self.assertEqual(self.report('zero')['vectors'], [[0.0, 0.0]] * 10)

    def test_grid(self):
        self.call('observable', map='example2', grid=3, length=20, label='grid')
        self.assertEqual(len(self.report('grid')['vectors']), 9)

    def test_check_failure(self):
        with self.assertRaises(CommandError):
            self.call('observable', map='identity', random=5, length=2, check='centre')

    def test_grid_and_random_in_config_file(self):
        path = self.outdir / 'both.conf'
        path.write_text("map = identity\ngrid = 3\nrandom = 5\nlength = 2\n", encoding='utf-8')
        with self.assertRaisesMessage(CommandError, 'incompatibles'):
            self.call('observable', config=str(path))

    def test_inverse_of_example3(self):
        self.call('observable', map='example3', inverse=True, random=4, length=20)
        report = self.report('observable-example3_inv')
        self.assertEqual(report['config']['map']['inverse'], True)
        self.assertEqual(len(report['vectors']), 4)


class AsymptoticCommandTests(CommandTestCase):

    def test_identity_union(self):
        self.call('asymptotic', map='identity', n_min=2, n_max=4, label='union')
        run_dir = self.outdir / 'union'
        for n in (2, 3, 4):
            self.assertTrue((run_dir / f'cycles-n{n}.csv').exists())
        self.assertTrue((run_dir / 'vectors.csv').exists())
        self.assertEqual([grid['n'] for grid in self.report('union')['per_grid']], [2, 3, 4])

    def test_bad_range(self):
        with self.assertRaises(CommandError):
            self.call('asymptotic', map='identity', n_min=5, n_max=3)


class MeanCommandTests(CommandTestCase):

    def test_translation(self):
        output = self.call('mean', map='translation:0.25,0.5', label='mean')
        self.assertIn('(0.250000000000, 0.500000000000)', output)
        self.assertEqual(self.report('mean')['vectors'], [[0.25, 0.5]])


class HullCommandTests(CommandTestCase):

    def test_hull_of_cycles(self):
        self.call('discretized', map='example2', n=8, label='ex2')
        output = self.call('hull', input=str(self.outdir / 'ex2' / 'cycles.csv'),
                           reference='segment-x', tolerance=0.01, label='hull')
        self.assertIn('Hausdorff', output)
        report = self.report('hull')
        self.assertEqual(report['kind'], 'rational')
        self.assertEqual(report['hull'], [[-1.0, 0.0], [1.0, 0.0]])
        self.assertTrue(report['degenerate'])

    def test_default_label_has_no_map(self):
        self.call('discretized', map='identity', n=2, label='id')
        self.call('hull', input=str(self.outdir / 'id' / 'cycles.csv'))
        report = self.report('hull')
        self.assertNotIn('map', report['config'])
        self.assertEqual(report['config']['label'], 'hull')
        self.assertEqual(report['hull'], [[0.0, 0.0]])

    def test_map_options_are_rejected(self):
        path = self.outdir / 'hull.conf'
        path.write_text("map = f1\n", encoding='utf-8')
        with self.assertRaisesMessage(CommandError, "clave desconocida 'map'"):
            self.call('hull', config=str(path))
        with self.assertRaises(TypeError):
            self.call('hull', map='f1')

    def test_missing_input(self):
        with self.assertRaises(CommandError):
            self.call('hull')
        with self.assertRaises(CommandError):
            self.call('hull', input=str(self.outdir / 'missing.csv'))


class ReproduceCommandTests(CommandTestCase):

    def test_figure_with_check(self):
        output = self.call('reproduce', '5')
        self.assertIn('Figura 5', output)
        report = self.report('fig5')
        self.assertTrue(report['checks']['square']['passed'])
        self.assertEqual(report['figure']['parameters'], {'n': 100})
        self.assertEqual(report['reference'], 'unit-square')

    def test_scaled_figure_skips_check(self):
        self.call('reproduce', '2', scale=0.1, label='fig2-small')
        report = self.report('fig2-small')
        self.assertEqual(report['checks'], {})
        self.assertEqual(report['plan']['count'], 25)

    def test_unknown_figure(self):
        with self.assertRaises(CommandError):
            self.call('reproduce', '12')
