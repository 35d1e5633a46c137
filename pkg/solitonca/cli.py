"""solitonca

Usage:
    solitonca evolve --alg=<alg> (--state=<state> | --file=<path>) [--r=<r>] [--steps=<n>] [--inverse] [--format=<fmt>] [--verbose]
    solitonca scatter --alg=<alg> --solitons=<spec> [--r=<r>] [--tmax=<n>] [--format=<fmt>] [--verbose]
    solitonca rmatrix --alg=<alg> --l=<l> --k=<k> (--in=<pair> | --table) [--format=<fmt>] [--verbose]
    solitonca conserved --alg=<alg> (--state=<state> | --file=<path>) [--lmax=<n>] [--format=<fmt>] [--verbose]
    solitonca verify-natural --alg=<alg> --l=<l> --k=<k> [--format=<fmt>] [--verbose]
    solitonca verify [--suite=<suite>] [--seed=<seed>] [--samples=<n>] [--format=<fmt>] [--verbose]

Options:
    -h --help          Show this
    --alg=<alg>        Algebra as <family>:<rank>, e.g. C1:3
    --state=<state>    Cells separated by spaces, e.g. "1 1 3 2b 1"
    --file=<path>      One state per line; a leading "alg=<alg> |" overrides --alg
    --solitons=<spec>  Space separated <l>:(<coords>)@<gamma>, left to right
    --in=<pair>        "(<coords of b>)|(<coords of c>)"
    --format=<fmt>     trace, labels or json-lines [default: trace]
    --suite=<suite>    Suite name, or all [default: all]
    --verbose          Log debug lines to stderr
"""
import logging
import re
import sys

from docopt import docopt

from solitonca.automaton import (SpectrumError, StateParseError, WindowOverflowError, energy_sequence, parse_state,
                                 parse_state_file, soliton_spectrum, trace)
from solitonca.config import NoFamilyException, default_config
from solitonca.crystal import AlgebraError, ElementError, parse_algebra, parse_element
from solitonca.natural import NaturalTypeError, check_commutations
from solitonca.output import (FormatError, check_format, checks_lines, conserved_lines, labels_lines, rmatrix_lines,
                              scatter_lines, suite_lines, table_lines, trace_lines)
from solitonca.rmatrix import R_general, TableLookupError, build_hw_table
from solitonca.soliton import (NotSolitonState, PlacementError, ScatteringTimeout, SolitonLabel, affine,
                               detect_solitons, scattering_experiment)
from solitonca.verification import NoSuiteException, run_suite

SOLITON_PATTERN = re.compile(r'^(\d+):(\([-\d,\s]*\))@(\d+)$')

INPUT_ERRORS = (AlgebraError, ElementError, StateParseError, NoFamilyException, NoSuiteException, FormatError,
                PlacementError, NaturalTypeError, TableLookupError, ValueError, IOError)

logger = logging.getLogger(__name__)

class UsageError(Exception):
    pass

def setup_logging(verbose=False):
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter())
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    root_logger = logging.getLogger()
    root_logger.addHandler(console_handler)
    root_logger.setLevel(logging.DEBUG)
    return console_handler

def emit(lines):
    for line in lines:
        print(line)

def _int_option(args, name, default=None):
    value = args[name]
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError("{name} expects an integer, got {value}".format(name=name, value=value))

def _states(args):
    alg = parse_algebra(args["--alg"])
    if args["--file"]:
        return parse_state_file(args["--file"], alg)
    return [parse_state(args["--state"], alg)]

def parse_solitons(alg, spec):
    """Read `5:(2,1,0,0,1,0,1,0)@40 3:(...)@20` into labels over the lowered algebra."""
    lowered = alg.rank_lowered()
    labels = []
    for token in spec.split():
        match = SOLITON_PATTERN.match(token)
        if match is None:
            raise UsageError("Soliton {token} should look like <l>:(<coords>)@<gamma>".format(token=token))
        length = int(match.group(1))
        element = parse_element(lowered, match.group(2), length)
        labels.append(SolitonLabel(length, int(match.group(3)), element))
    if not labels:
        raise UsageError("No solitons given")
    return labels

def parse_pair(alg, text, l, k):
    try:
        left, right = text.split('|')
    except ValueError:
        raise UsageError("Pair {text} should look like (..)|(..)".format(text=text))
    return parse_element(alg, left, l), parse_element(alg, right, k)

def _step_labels(state):
    try:
        return [affine(state.alg, label) for label in detect_solitons(state)]
    except NotSolitonState:
        return None

def cmd_evolve(args):
    runs = default_config().runs
    fmt = check_format(args["--format"])
    r = _int_option(args, "--r", runs.r)
    steps = _int_option(args, "--steps", runs.steps)
    for state in _states(args):
        states = trace(state, r, steps, inverse=args["--inverse"])
        if fmt == 'labels':
            emit(labels_lines([_step_labels(s) for s in states], fmt))
        else:
            emit(trace_lines(states, fmt))
    return 0

def cmd_scatter(args):
    fmt = check_format(args["--format"])
    alg = parse_algebra(args["--alg"])
    incoming = parse_solitons(alg, args["--solitons"])
    outcome = scattering_experiment(alg, incoming, r=_int_option(args, "--r"), t_max=_int_option(args, "--tmax"))
    emit(scatter_lines(outcome, fmt))
    return 0 if outcome.match else 2

def cmd_rmatrix(args):
    fmt = check_format(args["--format"])
    alg = parse_algebra(args["--alg"])
    l = _int_option(args, "--l")
    k = _int_option(args, "--k")
    if args["--table"]:
        emit(table_lines(alg, build_hw_table(alg, l, k), fmt))
        return 0
    b, c = parse_pair(alg, args["--in"], l, k)
    c_new, b_new, h = R_general(alg, b, c)
    emit(rmatrix_lines(c_new, b_new, h, fmt))
    return 0

def cmd_conserved(args):
    fmt = check_format(args["--format"])
    lmax = _int_option(args, "--lmax")
    for state in _states(args):
        emit(conserved_lines(energy_sequence(state, lmax), soliton_spectrum(state), fmt))
    return 0

def cmd_verify_natural(args):
    fmt = check_format(args["--format"])
    alg = parse_algebra(args["--alg"])
    report = check_commutations(alg, _int_option(args, "--l"), _int_option(args, "--k"))
    emit(checks_lines(report.results, fmt))
    return 0 if report.passed else 2

def cmd_verify(args):
    fmt = check_format(args["--format"])
    report = run_suite(args["--suite"], seed=_int_option(args, "--seed"), samples=_int_option(args, "--samples"))
    emit(suite_lines(report, fmt))
    return 0 if report.passed else 2

COMMANDS = [
    ("evolve", cmd_evolve),
    ("scatter", cmd_scatter),
    ("rmatrix", cmd_rmatrix),
    ("conserved", cmd_conserved),
    ("verify-natural", cmd_verify_natural),
    ("verify", cmd_verify),
]

def main(argv=None):
    args = docopt(__doc__, argv=argv)
    handler = setup_logging(args["--verbose"])
    try:
        command = next(command for name, command in COMMANDS if args[name])
        return command(args)
    except (UsageError,) + INPUT_ERRORS as e:
        logger.error(str(e))
        return 1
    except (ScatteringTimeout, WindowOverflowError, SpectrumError, NotSolitonState) as e:
        logger.error(str(e))
        return 2
    finally:
        logging.getLogger().removeHandler(handler)

if __name__ == "__main__":
    sys.exit(main())
