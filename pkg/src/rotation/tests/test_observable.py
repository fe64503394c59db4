import numpy as np
from django.test import SimpleTestCase, override_settings

from rotation.exceptions import InvalidParameter, NonFiniteOrbit
from rotation.observable import (
    SamplingPlan,
    cell_centres,
    cluster_fractions,
    displacement_bound,
    mean_rotation_vector,
    orbit_rotation_vector,
    power_scaling_check,
    sample_observable,
    sample_vectors,
    segment_vectors,
)
from rotation.torus_maps import ShearProfile, ShearX, Translation, builtin, conjugate, eval_lift, inverse

from .test_discretization import NanLift
from .test_torus_maps import p_formula, q_formula


class SamplingPlanTests(SimpleTestCase):

    def test_random_starts_are_indexed(self):
        plan = SamplingPlan.random(100, length=10, seed=42)
        starts = plan.starts()
        self.assertEqual(starts.shape, (100, 2))
        self.assertTrue(np.all((starts >= 0) & (starts < 1)))
        np.testing.assert_array_equal(plan.starts(37, 60), starts[37:60])
        np.testing.assert_array_equal(SamplingPlan.random(100, 10, seed=42).starts(), starts)
        self.assertFalse(np.array_equal(SamplingPlan.random(100, 10, seed=43).starts(), starts))

    def test_grid_starts(self):
        plan = SamplingPlan.grid(4, length=5)
        starts = plan.starts()
        self.assertEqual(plan.size, 16)
        np.testing.assert_array_equal(starts[0], [0.0, 0.0])
        np.testing.assert_array_equal(starts[6], [0.25, 0.5])

    @override_settings(ROTATION_DEFAULT_LENGTH=77, ROTATION_DEFAULT_SEED=9)
    def test_defaults_from_settings(self):
        plan = SamplingPlan.random(3)
        self.assertEqual((plan.length, plan.seed), (77, 9))
        self.assertEqual(plan.describe(), {'mode': 'random', 'count': 3, 'side': 0, 'length': 77, 'seed': 9})

    def test_validation(self):
        with self.assertRaises(InvalidParameter):
            SamplingPlan('spiral')
        with self.assertRaises(InvalidParameter):
            SamplingPlan.random(0, 10)
        with self.assertRaises(InvalidParameter):
            SamplingPlan('grid', side=0)
        with self.assertRaises(InvalidParameter):
            SamplingPlan.random(5, 10, seed=-1)

    def test_zero_is_not_replaced_by_defaults(self):
        with self.assertRaises(InvalidParameter):
            SamplingPlan.random(5, 0)
        with self.assertRaises(InvalidParameter):
            SamplingPlan.grid(3, 0)


class SegmentTests(SimpleTestCase):

    def test_translation_is_exact(self):
        lift = Translation(0.3, -0.7)
        for length in (1, 7, 1000):
            vectors = segment_vectors(lift, [[0.1, 0.2], [0.9, 0.9]], length)
            self.assertTrue(np.all(vectors == [0.3, -0.7]))

    def test_single_step_is_displacement(self):
        f1 = builtin('f1')
        sample = orbit_rotation_vector(f1, (0.25, 0.25), 1)
        self.assertAlmostEqual(sample.vector[0], 0.74147850403906213 - 0.25, places=12)
        self.assertEqual(sample.length, 1)

    def test_non_finite_orbit(self):
        with self.assertRaises(NonFiniteOrbit):
            segment_vectors(NanLift(), [[0.5, 0.5]], 3)

    def test_bad_length(self):
        with self.assertRaises(InvalidParameter):
            segment_vectors(builtin('f1'), [[0.5, 0.5]], 0)

    def test_example2_vectors(self):
        samples = sample_observable(builtin('example2'), SamplingPlan.random(100, 500, seed=3))
        vectors = sample_vectors(samples)
        self.assertTrue(np.all(vectors[:, 1] == 0.0))
        self.assertLessEqual(np.abs(vectors[:, 0]).max(), 1.0 + 1e-12)

    def test_example3_attracting_circle(self):
        vectors = sample_vectors(sample_observable(builtin('example3'), SamplingPlan.random(100, 1000, seed=5)))
        self.assertLessEqual(np.abs(vectors[:, 1]).max(), 1e-3)
        _, near = cluster_fractions(vectors, [(-1.0, 0.0)], 0.2)
        self.assertGreaterEqual(near, 0.9)

    def test_example3_inverse_attracting_circle(self):
        # La inversa atrae hacia y=0, donde cada paso retrocede 1 en x.
        lift = inverse(builtin('example3'))
        vectors = sample_vectors(sample_observable(lift, SamplingPlan.random(50, 1000, seed=5)))
        self.assertLessEqual(np.abs(vectors[:, 1]).max(), 1e-3)
        _, near = cluster_fractions(vectors, [(-1.0, 0.0)], 0.2)
        self.assertGreaterEqual(near, 0.9)

    def test_worker_count_does_not_change_results(self):
        plan = SamplingPlan.random(600, 50, seed=8)
        single = sample_observable(builtin('f2'), plan, workers=1)
        threaded = sample_observable(builtin('f2'), plan, workers=3)
        self.assertEqual(single, threaded)


class OrbitReferenceTests(SimpleTestCase):
    """f1 desde (0.123, 0.456) contra las fórmulas escritas con math."""

    def test_prefix_matches_literal_formulas(self):
        x, y = 0.123, 0.456
        for _ in range(10):
            x, y = q_formula(*p_formula(x, y))
        sample = orbit_rotation_vector(builtin('f1'), (0.123, 0.456), 10)
        np.testing.assert_allclose(sample.vector, [(x - 0.123) / 10, (y - 0.456) / 10], atol=1e-8)

    def test_long_segment_is_reproducible(self):
        # Con T=1000 la órbita es caótica y el valor exacto depende de la libm de cada plataforma.
        f1 = builtin('f1')
        sample = orbit_rotation_vector(f1, (0.123, 0.456), 1000)
        self.assertEqual(sample, orbit_rotation_vector(f1, (0.123, 0.456), 1000))
        self.assertEqual((sample.start, sample.length), ((0.123, 0.456), 1000))
        self.assertTrue(np.all(np.isfinite(sample.vector)))
        self.assertLessEqual(np.linalg.norm(sample.vector), displacement_bound(f1) + 1e-2)
        self.assertEqual(segment_vectors(f1, [(0.123, 0.456)], 1000)[0].tolist(), list(sample.vector))


class PowerScalingTests(SimpleTestCase):

    def test_power_scaling(self):
        starts = np.random.default_rng(13).random((20, 2))
        for name in ('f1', 'f2', 'example2'):
            lift = builtin(name)
            for q in (2, 3, 5):
                for start in starts:
                    powered, scaled = power_scaling_check(lift, q, start, 200)
                    self.assertLess(np.abs(powered - scaled).max(), 1e-9, (name, q))

    def test_bad_exponent(self):
        with self.assertRaises(InvalidParameter):
            power_scaling_check(builtin('f1'), 0, (0, 0), 10)


class MeanRotationVectorTests(SimpleTestCase):

    def test_oscillatory_terms_integrate_to_zero(self):
        s = (np.arange(4096) + 0.5) / 4096
        for frequency in (11, 13):
            for integrand in (
                np.cos(2 * np.pi * s),
                np.sin(4 * np.pi * s) ** 2 * np.sin(6 * np.pi * s),
                np.sin(4 * np.pi * s) ** 2 * np.cos(2 * np.pi * frequency * s),
            ):
                self.assertLess(abs(integrand.mean()), 1e-9)

    def test_f1(self):
        mean = mean_rotation_vector(builtin('f1'), 1024)
        np.testing.assert_allclose(mean, [0.5, 0.5], atol=1e-6)

    def test_translation_is_exact(self):
        self.assertTrue(np.all(mean_rotation_vector(Translation(0.125, 0.3)) == [0.125, 0.3]))

    def test_cell_centres(self):
        centres = cell_centres(2)
        np.testing.assert_array_equal(centres, [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]])

    def test_bad_side(self):
        with self.assertRaises(InvalidParameter):
            mean_rotation_vector(builtin('f1'), -2)
        with self.assertRaises(InvalidParameter):
            mean_rotation_vector(builtin('f1'), 0)


class ConjugacyTests(SimpleTestCase):

    def test_conjugated_translation_stays_close(self):
        h = ShearX(ShearProfile(amplitude=0.3, frequency=5))
        base = Translation(0.25, 0.1)
        lift = conjugate(h, base)
        length = 1000
        bound = displacement_bound(h)
        vectors = sample_vectors(sample_observable(lift, SamplingPlan.random(50, length, seed=2)))
        drift = np.linalg.norm(vectors - [0.25, 0.1], axis=1).max()
        self.assertLessEqual(drift, 2 * bound / length + 1e-3)

    def test_conjugated_f1_tracks_f1(self):
        h = builtin('q')
        f1 = builtin('f1')
        lift = conjugate(h, f1)
        # Órbitas cortas: a más pasos el redondeo de h⁻¹∘h separa las dos órbitas caóticas.
        length = 5
        bound = displacement_bound(h)
        for start in np.random.default_rng(4).random((30, 2)):
            moved = h(start)
            conjugated = np.asarray(orbit_rotation_vector(lift, moved % 1.0, length).vector)
            plain = np.asarray(orbit_rotation_vector(f1, start, length).vector)
            self.assertLessEqual(np.linalg.norm(conjugated - plain), 2 * bound / length + 1e-6)
            # (h(F^T x) - F^T x) - (h(x) - x), el término que separa ambos vectores.
            end = start + length * plain
            difference = (eval_lift(h, end) - end) - (moved - start)
            np.testing.assert_allclose(length * (conjugated - plain), difference, atol=1e-8)

    def test_displacement_bound(self):
        self.assertAlmostEqual(displacement_bound(Translation(0.3, 0.4)), 0.5)
        self.assertLessEqual(displacement_bound(builtin('example2')), 1.0)


class ClusterTests(SimpleTestCase):

    def test_fractions(self):
        vectors = [(0, 0), (0.05, 0), (1, 1), (0.5, 0.5)]
        per_centre, near = cluster_fractions(vectors, [(0, 0), (1, 1)], 0.1)
        np.testing.assert_allclose(per_centre, [0.5, 0.25])
        self.assertEqual(near, 0.75)

    def test_empty(self):
        per_centre, near = cluster_fractions([], [(0, 0)], 0.1)
        self.assertEqual(near, 0.0)
        self.assertEqual(per_centre.tolist(), [0.0])
