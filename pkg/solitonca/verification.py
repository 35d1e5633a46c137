"""Suites behind `solitonca verify`: golden traces and seeded property checks."""
import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass, field

from solitonca.automaton import (AutomatonState, WindowOverflowError, carry, conserved_E, evolve_inverse_Tl, evolve_Tl,
                                 parse_state, soliton_spectrum, trace)
from solitonca.config import default_config
from solitonca.crystal import (Algebra, classical_e, classical_f, enumerate_B1, enumerate_Bl, format_coords,
                               letter_element, make_algebra, notation_element, parse_algebra, u, weight)
from solitonca.natural import (CheckResult, check_commutations, check_realized_labels, check_vertex_table,
                               check_zero_arrows)
from solitonca.rmatrix import R_general, TableLookupError, eta, minimum_energy, omega, omega_algebra, yang_baxter_check
from solitonca.soliton import (NotSolitonState, PlacementError, ScatteringTimeout, SolitonLabel, build_soliton_state,
                               detect_solitons, experiment_algebra, exponent, iota, predict, random_experiment,
                               random_placement)

logger = logging.getLogger(__name__)

FAMILIES = ('A1', 'A2odd', 'A2even', 'B1', 'C1', 'D1', 'D2')
NATURAL_FAMILIES = ('A2odd', 'B1', 'C1', 'D1')
TYPE_III_FAMILIES = ('A2even', 'D2')
EXPERIMENT_FAILURES = (ScatteringTimeout, PlacementError, TableLookupError, WindowOverflowError)

class NoSuiteException(Exception):
    pass

@dataclass
class SuiteReport(object):
    name: str
    seed: int
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(result.passed for result in self.results)

    @property
    def checked(self):
        return sum(result.checked for result in self.results)

def minimal_algebra(family):
    return make_algebra(family, default_config().find_family_by_name(family).min_rank)

def _coords(labels):
    return [format_coords(label.element) for label in labels]

def check_golden_trace(trace_config):
    """Replay a worked example and compare rows, labels, phase shifts and the R prediction."""
    alg = parse_algebra(trace_config.alg)
    result = CheckResult("golden {name}".format(name=trace_config.name))
    rows = [parse_state(row, alg) for row in trace_config.rows]
    replay = trace(rows[0], trace_config.r, trace_config.steps)
    for t, (expected, actual) in enumerate(zip(rows, replay)):
        result.record(expected == actual, "row {t} differs: {actual}".format(t=t, actual=actual.text()))
    result.record(evolve_inverse_Tl(rows[1], trace_config.r) == rows[0], "inverse of row 1 is not row 0")

    try:
        incoming = detect_solitons(rows[0])
        outgoing = detect_solitons(rows[-1])
    except NotSolitonState as e:
        result.record(False, "cannot read solitons: {error}".format(error=e))
        return result
    result.record(_coords(incoming) == trace_config.incoming, "incoming labels {labels}".format(labels=_coords(incoming)))
    result.record(_coords(outgoing) == trace_config.outgoing, "outgoing labels {labels}".format(labels=_coords(outgoing)))

    t = trace_config.steps
    normalized = [exponent(alg, label) + alg.varsigma * min(trace_config.r, label.length) * t for label in outgoing]
    before = dict((label.length, exponent(alg, label)) for label in incoming)
    shifts = [power - before.get(label.length, power) for power, label in zip(normalized, outgoing)]
    result.record(shifts == trace_config.shifts, "phase shifts {shifts}".format(shifts=shifts))
    predicted, _ = predict(alg, incoming, rows[0].capacities)
    actual = [(power, label.element) for power, label in zip(normalized, outgoing)]
    result.record([(a.power, a.element) for a in predicted] == actual, "prediction {predicted}".format(predicted=predicted))
    return result

def golden_suite(rng, samples):
    return [check_golden_trace(trace_config) for trace_config in default_config().traces]

def check_rmatrix(alg, max_capacity=3, rng=None, samples=0):
    """Involution, weight, e_i equivariance, u energies, minimal energies and Yang-Baxter."""
    result = CheckResult("R-matrix {alg}".format(alg=alg))
    for l, k in itertools.product(range(1, max_capacity + 1), repeat=2):
        for b, c in itertools.product(enumerate_Bl(alg, l), enumerate_Bl(alg, k)):
            c_new, b_new, h = R_general(alg, b, c)
            where = "{b} (x) {c}".format(b=b.coords, c=c.coords)
            result.record(R_general(alg, c_new, b_new) == (b, c, h), "involution on " + where)
            result.record(weight(alg, (b, c)) == weight(alg, (c_new, b_new)), "weight on " + where)
            for i in alg.nodes:
                raised = classical_e(alg, (b, c), i)
                if raised is not None:
                    result.record(R_general(alg, *raised)[:2] == classical_e(alg, (c_new, b_new), i), "e_{i} on {where}".format(i=i, where=where))
        if l >= k:
            h = R_general(alg, u(alg, l), u(alg, k))[2]
            result.record(h == 2 * alg.varsigma * k, "H(u_{l} (x) u_{k}) = {h}".format(l=l, k=k, h=h))
            result.record(minimum_energy(alg, l, k) == alg.config.min_energy * k, "minimum energy at ({l},{k})".format(l=l, k=k))
    if samples:
        seed = rng.randrange(1 << 30)
        result.record(yang_baxter_check(alg, 1, 2, 3, samples=samples, seed=seed), "Yang-Baxter at (1,2,3) seed {seed}".format(seed=seed))
    else:
        result.record(yang_baxter_check(alg, 1, 1, 1), "Yang-Baxter at (1,1,1)")
    return result

def rmatrix_suite(rng, samples):
    return [check_rmatrix(minimal_algebra(family), rng=rng, samples=samples) for family in FAMILIES]

def random_state(alg, rng, width=14, excited=5):
    letters = enumerate_B1(alg)
    cells = [letter_element(alg, 1)] * width
    for position in rng.sample(range(width), excited):
        cells[position] = rng.choice(letters)
    return AutomatonState(alg, cells)

def check_automaton(alg, rng, samples, lmax=6):
    """T_l commute, conserve every E_l and invert; N_l counts placed solitons."""
    result = CheckResult("automaton {alg}".format(alg=alg))
    for _ in range(samples):
        state = random_state(alg, rng)
        try:
            for l, m in itertools.combinations(range(1, lmax + 1), 2):
                one = evolve_Tl(evolve_Tl(state, l).state, m).state
                other = evolve_Tl(evolve_Tl(state, m).state, l).state
                result.record(one == other, "T_{l} T_{m} on {state}".format(l=l, m=m, state=state.text()))
            for l in range(1, lmax + 1):
                moved = evolve_Tl(state, l).state
                result.record(evolve_inverse_Tl(moved, l) == state, "inverse T_{l} on {state}".format(l=l, state=state.text()))
                result.record(all(conserved_E(moved, m) == conserved_E(state, m) for m in range(1, lmax + 1)),
                              "E conserved under T_{l} on {state}".format(l=l, state=state.text()))
        except WindowOverflowError as e:
            result.record(False, str(e))

        lengths = sorted(rng.sample(range(1, 5), 3), reverse=True)
        labels, _ = random_placement(alg, lengths, rng)
        spectrum = soliton_spectrum(build_soliton_state(alg, labels))
        result.record(spectrum == dict(Counter(lengths)), "N_l of lengths {lengths}: {spectrum}".format(lengths=lengths, spectrum=spectrum))
    return result

def automaton_suite(rng, samples):
    return [check_automaton(experiment_algebra(family), rng, samples) for family in FAMILIES]

def check_scattering(alg, rng, samples, three_body=0):
    """Two-body runs against R with the energy as phase shift, then three-body runs."""
    result = CheckResult("scattering {alg}".format(alg=alg))
    runs = [sorted(rng.sample(range(1, 6), 2), reverse=True) for _ in range(samples)] + [[5, 3, 1]] * three_body
    for lengths in runs:
        seed = rng.randrange(1 << 30)
        try:
            outcome = random_experiment(alg, lengths, seed=seed)
        except EXPERIMENT_FAILURES as e:
            result.record(False, "lengths {lengths} seed {seed}: {error}".format(lengths=lengths, seed=seed, error=e))
            continue
        result.record(outcome.match, "lengths {lengths} seed {seed}".format(lengths=lengths, seed=seed))
    return result

def scattering_suite(rng, samples):
    return [check_scattering(experiment_algebra(family), rng, samples, max(1, samples // 4)) for family in FAMILIES]

def natural_suite(rng, samples, pairs=((3, 2), (4, 2), (4, 3)), kmax=6):
    results = []
    for family in NATURAL_FAMILIES:
        alg = experiment_algebra(family)
        for l, k in pairs:
            report = check_commutations(alg, l, k)
            for check in report.results:
                check.name = "{name} {alg} ({l},{k})".format(name=check.name, alg=alg, l=l, k=k)
            results.extend(report.results)
        realized = check_realized_labels(alg, kmax)
        realized.name = "{name} {alg}".format(name=realized.name, alg=alg)
        arrows = check_zero_arrows(alg)
        arrows.name = "{name} {alg}".format(name=arrows.name, alg=alg)
        table = check_vertex_table(alg)
        table.name = "{name} {alg}".format(name=table.name, alg=alg)
        results.extend([realized, arrows, table])
    return results

def check_omega_consistency(alg, rng, samples, max_capacity=3):
    """R and H of a Type III family agree with C^(1) on omega images."""
    result = CheckResult("omega {alg}".format(alg=alg))
    target = omega_algebra(alg)
    for _ in range(samples):
        l, k = rng.randint(1, max_capacity), rng.randint(1, max_capacity)
        b, c = rng.choice(enumerate_Bl(alg, l)), rng.choice(enumerate_Bl(alg, k))
        c_new, b_new, h = R_general(alg, b, c)
        expected = (omega(alg, c_new), omega(alg, b_new), h)
        result.record(R_general(target, omega(alg, b), omega(alg, c)) == expected, "{b} (x) {c}".format(b=b.coords, c=c.coords))
    return result

def check_omega_eta_carry(alg, max_capacity=3):
    """omega (x) eta carries B_L (x) B_1 -> B_1 (x) B_L to its C^(1) counterpart."""
    result = CheckResult("omega eta {alg}".format(alg=alg))
    target = omega_algebra(alg)
    for capacity in range(1, max_capacity + 1):
        for b, x in itertools.product(enumerate_Bl(alg, capacity), enumerate_B1(alg)):
            x_new, b_new, _ = R_general(alg, b, x)
            first, second = eta(alg, x)
            y1, carried, _ = R_general(target, omega(alg, b), first)
            y2, carried, _ = R_general(target, carried, second)
            expected = eta(alg, x_new) + (omega(alg, b_new),)
            result.record((y1, y2, carried) == expected, "{b} (x) {x}".format(b=b.coords, x=x.coords))
    return result

def check_eta_iota(alg, max_capacity=3):
    """eta applied letterwise to iota_l(b) is the C^(1) iota_2l(omega(b)) up to one vacuum letter."""
    result = CheckResult("eta iota {alg}".format(alg=alg))
    lowered = alg.rank_lowered()
    target = Algebra('C1', alg.rank)
    one = letter_element(target, 1)
    for capacity in range(1, max_capacity + 1):
        for b in enumerate_Bl(lowered, capacity):
            doubled = [letter for x in iota(alg, capacity, b) for letter in eta(alg, x)]
            word = iota(target, 2 * capacity, omega(lowered, b))
            if (capacity - b.size) % 2:
                expected = [one] + word
            else:
                expected = word + [one]
            result.record(doubled + [one] == expected, "{b}".format(b=b.coords))
    return result

def type_iii_suite(rng, samples):
    results = []
    for family in TYPE_III_FAMILIES:
        base = minimal_algebra(family)
        for alg in (base, make_algebra(family, base.rank + 1)):
            results.extend([check_omega_consistency(alg, rng, samples), check_omega_eta_carry(alg)])
        results.append(check_eta_iota(experiment_algebra(family)))
    return results

def check_inhomogeneous(rng, samples, alg=None):
    """Two-body runs through a block of u_m sites against the corrected prediction."""
    alg = make_algebra('C1', 3) if alg is None else alg
    result = CheckResult("inhomogeneous {alg}".format(alg=alg))
    for _ in range(samples):
        l = rng.randint(2, 4)
        k = rng.randint(1, l - 1)
        capacities = [rng.choice((1, 2, 3)) for _ in range(rng.randint(1, 3))]
        seed = rng.randrange(1 << 30)
        try:
            outcome = random_experiment(alg, [l, k], seed=seed, capacities=capacities, r=max([l] + capacities) + 1)
        except EXPERIMENT_FAILURES as e:
            result.record(False, "capacities {capacities} seed {seed}: {error}".format(capacities=capacities, seed=seed, error=e))
            continue
        result.record(outcome.match, "lengths ({l},{k}) capacities {capacities} seed {seed}".format(l=l, k=k, capacities=capacities, seed=seed))
    return result

def inhomogeneous_suite(rng, samples):
    trace_config = default_config().find_trace_by_name('c1_inhomogeneous')
    return [check_golden_trace(trace_config), check_inhomogeneous(rng, samples)]

def check_letter_rmatrix(alg, max_capacity=4):
    """(l-j,j,0) (x) 1 and (l-j,j,0) (x) 2 across B_l (x) B_1."""
    result = CheckResult("B_l (x) B_1 {alg}".format(alg=alg))
    one, two = letter_element(alg, 1), letter_element(alg, 2)
    for l in range(1, max_capacity + 1):
        for j in range(l + 1):
            b = notation_element(alg, l, l - j, j)
            if j > 0:
                expected = (two, notation_element(alg, l, l - j + 1, j - 1))
            else:
                expected = (one, b)
            result.record(R_general(alg, b, one)[:2] == expected, "({x1},{x2}) (x) 1".format(x1=l - j, x2=j))
            if j < l:
                expected = (one, notation_element(alg, l, l - j - 1, j + 1))
            else:
                expected = (two, b)
            result.record(R_general(alg, b, two)[:2] == expected, "({x1},{x2}) (x) 2".format(x1=l - j, x2=j))
    return result

def check_single_soliton(alg, rng, samples, kmax=6, lmax=5):
    """E_k = varsigma min(k,l) and T_k moves a lone soliton by min(k,l) slots."""
    result = CheckResult("single soliton {alg}".format(alg=alg))
    for _ in range(samples):
        l = rng.randint(1, lmax)
        label = SolitonLabel(l, l + 2, rng.choice(enumerate_Bl(alg.rank_lowered(), l)))
        state = build_soliton_state(alg, [label])
        for k in range(1, kmax + 1):
            result.record(conserved_E(state, k) == alg.varsigma * min(k, l), "E_{k} of {b}".format(k=k, b=label.element.coords))
            moved = SolitonLabel(l, label.gamma - min(k, l), label.element)
            where = "T_{k} of {b}".format(k=k, b=label.element.coords)
            try:
                read = detect_solitons(evolve_Tl(state, k).state)
            except (NotSolitonState, WindowOverflowError) as e:
                result.record(False, "{where}: {error}".format(where=where, error=e))
                continue
            result.record(read == [moved], where)
    return result

def check_shift_identity(alg, max_capacity=4):
    """u_k (x) iota_l(b) (x) 1^min(k,l) carries to 1^min(k,l) (x) iota_l(b) (x) u_k."""
    result = CheckResult("shift identity {alg}".format(alg=alg))
    one = letter_element(alg, 1)
    for l, k in itertools.product(range(1, max_capacity + 1), repeat=2):
        for b in enumerate_Bl(alg.rank_lowered(), l):
            word = iota(alg, l, b)
            shift = min(k, l)
            cells, carrier, _ = carry(alg, u(alg, k), word + [one] * shift)
            result.record(cells == [one] * shift + word and carrier == u(alg, k), "l={l} k={k} {b}".format(l=l, k=k, b=b.coords))
    return result

def check_iota_intertwines(alg, max_capacity=3):
    """iota_l intertwines e_i, f_i one rank down with e_i+1, f_i+1."""
    result = CheckResult("iota intertwines {alg}".format(alg=alg))
    lowered = alg.rank_lowered()
    for l in range(1, max_capacity + 1):
        for b in enumerate_Bl(lowered, l):
            word = tuple(iota(alg, l, b))
            for i in lowered.nodes:
                for operator in (classical_e, classical_f):
                    image = operator(lowered, b, i)
                    expected = None if image is None else tuple(iota(alg, l, image))
                    result.record(operator(alg, word, i + 1) == expected, "{name} {i} on {b}".format(name=operator.__name__, i=i, b=b.coords))
    return result

def identities_suite(rng, samples):
    results = []
    for family in FAMILIES:
        alg = experiment_algebra(family)
        results.extend([check_letter_rmatrix(minimal_algebra(family)), check_single_soliton(alg, rng, samples),
                        check_shift_identity(alg, 3), check_iota_intertwines(alg)])
    return results

SUITES = {
    'golden': golden_suite,
    'rmatrix': rmatrix_suite,
    'automaton': automaton_suite,
    'scattering': scattering_suite,
    'natural': natural_suite,
    'typeIII': type_iii_suite,
    'inhomogeneous': inhomogeneous_suite,
    'identities': identities_suite,
}

def run_suite(name, seed=None, samples=None):
    runs = default_config().runs
    seed = runs.seed if seed is None else seed
    samples = runs.random_samples if samples is None else samples
    if name == 'all':
        names = sorted(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise NoSuiteException("Suite {name} not found".format(name=name))
    rng = random.Random(seed)
    report = SuiteReport(name, seed)
    for suite in names:
        logger.debug("Running suite %s with seed %d", suite, seed)
        report.results.extend(SUITES[suite](rng, samples))
    logger.info("Suite %s: %d checks, %s", name, report.checked, "pass" if report.passed else "FAIL")
    return report
