import os
import unittest

import yaml
from mock import patch

from solitonca.config import (Config, ConfigError, FamilyConfig, GoldenTrace, NoFamilyException, NoTraceException,
                              RunDefaults, default_config)

def setUpModule():
    global families
    global traces
    global config_fixtures_dir

    config_fixtures_dir = os.path.join('tests', 'fixtures', 'config')
    with open(os.path.join(config_fixtures_dir, 'algebras', 'algebras.yaml')) as f:
        families = yaml.safe_load(f)

    with open(os.path.join(config_fixtures_dir, 'golden', 'traces.yaml')) as f:
        traces = yaml.safe_load(f)

class ConfigTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.config = Config.from_path(config_fixtures_dir)

    def test_number_families(self):
        self.assertEqual(len(self.config.families), 3)

    def test_number_traces(self):
        self.assertEqual(len(self.config.traces), 1)

    def test_runs(self):
        self.assertEqual(self.config.runs.r, 6)
        self.assertEqual(self.config.runs.seed, 7)
        self.assertEqual(self.config.runs.window_slack, 3)

    def test_find_existing_family(self):
        actual = self.config.find_family_by_name("C1")
        expected = self.config.families[2]
        self.assertEqual(actual, expected)

    def test_find_non_existing_family(self):
        with self.assertRaises(NoFamilyException):
            self.config.find_family_by_name("E8")

    def test_find_existing_trace(self):
        self.assertEqual(self.config.find_trace_by_name("ball").steps, 2)

    def test_find_non_existing_trace(self):
        with self.assertRaises(NoTraceException):
            self.config.find_trace_by_name("kite")

    def test_missing_directory(self):
        with self.assertRaises(ConfigError):
            Config.from_path(os.path.join('tests', 'fixtures', 'nowhere'))

    def test_package_config(self):
        config = default_config()
        self.assertEqual(len(config.families), 7)
        self.assertEqual(config.find_family_by_name("A2even").varsigma, 2)
        self.assertEqual(config.find_trace_by_name("c1_inhomogeneous").alg, "C1:3")

class FamilyConfigTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.family = FamilyConfig(**families[1])

    def test_fields(self):
        self.assertEqual(self.family.name, 'B1')
        self.assertEqual(self.family.type_class, 'I')
        self.assertTrue(self.family.has_zero)
        self.assertFalse(self.family.has_phi)

    def test_non_valid_type_class(self):
        family = dict(families[0], type_class='V')
        with self.assertRaises(ConfigError):
            FamilyConfig(**family)

    def test_non_valid_varsigma(self):
        family = dict(families[0], varsigma=3)
        with self.assertRaises(ConfigError):
            FamilyConfig(**family)

    def test_non_valid_sum_rule(self):
        family = dict(families[0], sum_rule='odd')
        with self.assertRaises(ConfigError):
            FamilyConfig(**family)

class GoldenTraceTest(unittest.TestCase):
    def test_fields(self):
        trace = GoldenTrace(**traces[0])
        self.assertEqual(trace.alg, "A1:2")
        self.assertEqual(trace.r, 1)
        self.assertEqual(trace.shifts, [0])
        self.assertEqual(trace.steps, 2)

    def test_inconsistent_labels(self):
        trace = dict(traces[0], shifts=[0, 1])
        with self.assertRaises(ConfigError):
            GoldenTrace(**trace)

class RunDefaultsTest(unittest.TestCase):
    def setUp(self):
        self.runs = RunDefaults(cache_size=64)

    def test_cache_size_without_variable(self):
        self.assertEqual(self.runs.resolve_cache_size({}), 64)

    def test_cache_size_from_variable(self):
        self.assertEqual(self.runs.resolve_cache_size({'SOLITONCA_CACHE_SIZE': '12'}), 12)

    @patch.dict(os.environ, {'SOLITONCA_CACHE_SIZE': '9'})
    def test_cache_size_from_environment(self):
        self.assertEqual(self.runs.resolve_cache_size(), 9)

    def test_cache_size_not_integer(self):
        with self.assertRaises(ConfigError):
            self.runs.resolve_cache_size({'SOLITONCA_CACHE_SIZE': 'lots'})

    def test_cache_size_not_positive(self):
        with self.assertRaises(ConfigError):
            self.runs.resolve_cache_size({'SOLITONCA_CACHE_SIZE': '0'})
