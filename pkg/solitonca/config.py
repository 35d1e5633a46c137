import os
from functools import lru_cache

import yaml

PACKAGE_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config')
CACHE_SIZE_VARIABLE = 'SOLITONCA_CACHE_SIZE'

class ConfigError(Exception):
    pass

class NoFamilyException(Exception):
    pass

class NoTraceException(Exception):
    pass

class BaseConfig(object):
    def __repr__(self):
        return str(self.__dict__)

class FamilyConfig(BaseConfig):
    TYPE_CLASSES = ('A', 'I', 'II', 'III')
    CLASSICAL_TYPES = ('A', 'B', 'C', 'D')
    SUM_RULES = ('equal', 'at_most', 'parity')

    def __init__(self, name, title, type_class, varsigma, classical, min_rank, sum_rule, min_energy, has_zero=False, has_phi=False):
        if type_class not in self.TYPE_CLASSES:
            raise ConfigError("Type class not valid {type_class}".format(type_class=type_class))
        if classical not in self.CLASSICAL_TYPES:
            raise ConfigError("Classical type not valid {classical}".format(classical=classical))
        if sum_rule not in self.SUM_RULES:
            raise ConfigError("Sum rule not valid {sum_rule}".format(sum_rule=sum_rule))
        if varsigma not in (1, 2):
            raise ConfigError("varsigma must be 1 or 2, got {varsigma}".format(varsigma=varsigma))
        self.name = name
        self.title = title
        self.type_class = type_class
        self.varsigma = varsigma
        self.classical = classical
        self.min_rank = int(min_rank)
        self.sum_rule = sum_rule
        self.min_energy = int(min_energy)
        self.has_zero = bool(has_zero)
        self.has_phi = bool(has_phi)

class RunDefaults(BaseConfig):
    def __init__(self, r=12, steps=7, tmax=80, seed=0, random_samples=20, window_slack=2, cache_size=256):
        self.r = int(r)
        self.steps = int(steps)
        self.tmax = int(tmax)
        self.seed = int(seed)
        self.random_samples = int(random_samples)
        self.window_slack = int(window_slack)
        self.cache_size = int(cache_size)

    def resolve_cache_size(self, environ=None):
        """Size of the highest weight table cache, SOLITONCA_CACHE_SIZE first."""
        environ = os.environ if environ is None else environ
        value = environ.get(CACHE_SIZE_VARIABLE)
        if value is None:
            return self.cache_size
        try:
            size = int(value)
        except ValueError:
            raise ConfigError("{variable} should be an integer, got {value}".format(variable=CACHE_SIZE_VARIABLE, value=value))
        if size < 1:
            raise ConfigError("{variable} should be positive".format(variable=CACHE_SIZE_VARIABLE))
        return size

class GoldenTrace(BaseConfig):
    def __init__(self, name, alg, r, rows, incoming, outgoing, shifts):
        if len(outgoing) != len(incoming) or len(shifts) != len(outgoing):
            raise ConfigError("Trace {name} has inconsistent labels".format(name=name))
        self.name = name
        self.alg = alg
        self.r = int(r)
        self.rows = list(rows)
        self.incoming = list(incoming)
        self.outgoing = list(outgoing)
        self.shifts = [int(shift) for shift in shifts]

    @property
    def steps(self):
        return len(self.rows) - 1

class Config(object):
    def __init__(self, path, families, runs, traces):
        self.path = path
        self.families = families
        self.runs = runs
        self.traces = traces

    @classmethod
    def from_path(cls, path=PACKAGE_CONFIG_PATH):
        def _yaml_files(directory):
            directory_path = os.path.join(path, directory)
            if not os.path.isdir(directory_path):
                raise ConfigError("Missing configuration directory {directory}".format(directory=directory_path))
            return [os.path.join(directory_path, f) for f in sorted(os.listdir(directory_path)) if f.endswith('.yaml') or f.endswith('.yml')]

        def _parse_file(filename):
            with open(filename, "r") as f:
                return yaml.safe_load(f)

        def _parse_families_directory():
            families = []
            for filename in _yaml_files('algebras'):
                families.extend(_parse_file(filename) or [])
            return families

        def _parse_runs_directory():
            runs = {}
            for filename in _yaml_files('runs'):
                runs.update(_parse_file(filename) or {})
            return runs

        def _parse_golden_directory():
            traces = []
            for filename in _yaml_files('golden'):
                traces.extend(_parse_file(filename) or [])
            return traces

        try:
            families = [FamilyConfig(**family) for family in _parse_families_directory()]
            runs = RunDefaults(**_parse_runs_directory())
            traces = [GoldenTrace(**trace) for trace in _parse_golden_directory()]
        except TypeError as e:
            raise ConfigError("Malformed configuration in {path}: {error}".format(path=path, error=e))

        return cls(path, families, runs, traces)

    def find_family_by_name(self, name):
        try:
            return next(family for family in self.families if family.name == name)
        except StopIteration:
            raise NoFamilyException("Family {name} not found".format(name=name))

    def find_trace_by_name(self, name):
        try:
            return next(trace for trace in self.traces if trace.name == name)
        except StopIteration:
            raise NoTraceException("Trace {name} not found".format(name=name))

    def __repr__(self):
        return str(self.__dict__)

@lru_cache(maxsize=None)
def default_config():
    return Config.from_path(PACKAGE_CONFIG_PATH)
