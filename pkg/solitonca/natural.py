"""The crystal B_natural of Types I and II and the operator T_natural.

T_natural[v] threads an element v of B_natural through a state with the
isomorphism B_natural (x) B_1 -> B_1 (x) B_natural. The listed vertices are
looked up directly. Every other vertex is derived: the vacuum vertex
(1 2) (x) 1 -> 1 (x) (1 2) is carried along e_i and f_i for i = 0..n on both
sides, the 0-arrows of B_natural and B_1 included.
"""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from solitonca.automaton import AutomatonState, WindowOverflowError, evolve_Tl
from solitonca.config import default_config
from solitonca.crystal import (act_on_letters, enumerate_Bl, format_letter, letter_element, letter_of, notation_element,
                               notation_of, u, weight)
from solitonca.rmatrix import AffineElement, R_affine, build_hw_table
from solitonca.soliton import NotSolitonState, SolitonLabel, build_soliton_state, detect_solitons

logger = logging.getLogger(__name__)

class OutsideTableError(Exception):
    pass

class NaturalTypeError(Exception):
    pass

NATURAL_FAILURES = (OutsideTableError, WindowOverflowError, NotSolitonState)

@dataclass(frozen=True)
class BNatElement(object):
    pair: tuple = None

    @property
    def is_phi(self):
        return self.pair is None

    def __str__(self):
        if self.pair is None:
            return 'phi'
        return "({top} {bottom})".format(top=format_letter(self.pair[0]), bottom=format_letter(self.pair[1]))

PHI = BNatElement()
CARRIER = BNatElement((1, 2))
BARRED_CARRIER = BNatElement((1, -2))

COMMON_VERTICES = [
    ((1, 2), 3, 1, (2, 3)),
    ((1, 3), 2, 3, (1, 2)),
    ((2, 3), 1, 2, (1, 3)),
    ((2, -2), 1, 2, (1, -2)),
    ((2, -1), 1, 2, (2, -2)),
    ((3, -1), 1, 3, (2, -2)),
    ((3, -1), 2, 3, (2, -1)),
    ((-2, -1), 1, -2, (2, -2)),
    ((-2, -1), 2, -2, (2, -1)),
    ((-2, -1), 3, -2, (3, -1)),
]

TYPE_VERTICES = {
    'I': [
        ((1, 2), -2, 1, None),
        (None, 3, 1, (3, -1)),
        (None, -2, 1, (-2, -1)),
    ],
    'II': [
        ((1, 2), -2, 1, (2, -2)),
        ((1, 2), -1, 1, (2, -1)),
        ((1, -2), 2, -2, (1, 2)),
        ((1, -2), 3, -2, (1, 3)),
        ((1, -2), -1, 1, (-2, -1)),
        ((2, -2), -2, -1, (1, -2)),
        ((2, -1), 3, -1, (2, 3)),
        ((2, -1), -2, -1, (2, -2)),
    ],
}

LETTER_ZERO_ARROWS = {
    'I': {-2: 1, -1: 2},
    'II': {-1: 1},
}

def _require_natural(alg):
    if alg.type_class not in ('I', 'II'):
        raise NaturalTypeError("T_natural is defined for Types I and II, not {alg}".format(alg=alg))

def enumerate_bnat(alg):
    _require_natural(alg)
    letters = alg.letters
    elements = []
    for alpha, beta in itertools.combinations(letters, 2):
        if (alpha, beta) != (1, -1):
            elements.append(BNatElement((alpha, beta)))
    if alg.classical == 'B':
        elements.append(BNatElement((0, 0)))
    if alg.classical == 'D':
        elements.append(BNatElement((-alg.rank, alg.rank)))
    if alg.type_class == 'I':
        elements.append(PHI)
    return elements

def bnat_weight(alg, v):
    if v.is_phi:
        return (0,) * alg.weight_length
    return weight(alg, tuple(letter_element(alg, letter) for letter in v.pair))

def bnat_act(alg, v, i, raising=False):
    """Classical e_i (raising) or f_i on B_natural; phi is a singlet."""
    if v.is_phi:
        return None
    letters = act_on_letters(alg, list(v.pair), i, raising)
    return None if letters is None else BNatElement(tuple(letters))

def zero_arrows(alg):
    """The f_0 arrows of B_natural as a dict source -> target."""
    _require_natural(alg)
    arrows = {}
    for v in enumerate_bnat(alg):
        if v.is_phi:
            continue
        alpha, beta = v.pair
        if alg.type_class == 'I':
            if v.pair == (-2, -1):
                arrows[v] = PHI
            elif beta == -2 and alpha not in (1, 2):
                arrows[v] = BNatElement((1, alpha))
            elif beta == -1 and alpha not in (2, -2):
                arrows[v] = BNatElement((2, alpha))
        elif beta == -1 and alpha != 1:
            arrows[v] = BNatElement((1, alpha))
    if alg.type_class == 'I':
        arrows[PHI] = CARRIER
    return arrows

def f0(alg, v):
    return zero_arrows(alg).get(v)

def e0(alg, v):
    return next((source for source, target in zero_arrows(alg).items() if target == v), None)

@lru_cache(maxsize=None)
def _vertex_table(alg):
    table = {}
    for top, x, x_new, bottom in COMMON_VERTICES + TYPE_VERTICES[alg.type_class]:
        used = [letter for pair in (top, bottom) if pair is not None for letter in pair] + [x, x_new]
        if any(letter not in alg.letters for letter in used):
            continue
        table[(BNatElement(top), x)] = (x_new, BNatElement(bottom))
    return table

def letter_zero_arrows(alg):
    """The f_0 arrows of B_1 as a dict source letter -> target letter."""
    _require_natural(alg)
    return dict(LETTER_ZERO_ARROWS[alg.type_class])

def _zero_string(arrows, v):
    """(epsilon_0, phi_0) of v along a table of f_0 arrows."""
    backward = dict((target, source) for source, target in arrows.items())
    eps = 0
    current = v
    while current in backward:
        current = backward[current]
        eps += 1
    phi_length = 0
    current = v
    while current in arrows:
        current = arrows[current]
        phi_length += 1
    return eps, phi_length

def _zero_act(factors, arrows, raising):
    """e_0 or f_0 on a two-factor tensor; a minus cancels the last unmatched plus."""
    (eps1, phi1), (eps2, phi2) = [_zero_string(table, factor) for factor, table in zip(factors, arrows)]
    matched = min(phi1, eps2)
    if raising:
        position = 1 if eps2 > matched else (0 if eps1 else None)
    else:
        position = 0 if phi1 > matched else (1 if phi2 else None)
    if position is None:
        return None
    table = arrows[position]
    moved = list(factors)
    if raising:
        moved[position] = next(source for source, target in table.items() if target == factors[position])
    else:
        moved[position] = table[factors[position]]
    return tuple(moved)

def _word(v):
    return [] if v.is_phi else list(v.pair)

def _from_word(v, letters):
    return v if v.is_phi else BNatElement(tuple(letters))

def _act_carrier_first(alg, pair, i, raising):
    v, x = pair
    if i == 0:
        return _zero_act(pair, (zero_arrows(alg), letter_zero_arrows(alg)), raising)
    letters = act_on_letters(alg, _word(v) + [x], i, raising)
    return None if letters is None else (_from_word(v, letters[:-1]), letters[-1])

def _act_carrier_last(alg, pair, i, raising):
    x, v = pair
    if i == 0:
        return _zero_act(pair, (letter_zero_arrows(alg), zero_arrows(alg)), raising)
    letters = act_on_letters(alg, [x] + _word(v), i, raising)
    return None if letters is None else (letters[0], _from_word(v, letters[1:]))

@lru_cache(maxsize=None)
def derive_vertices(alg):
    """The isomorphism spread from the vacuum vertex, and the arrows where both sides disagree."""
    _require_natural(alg)
    elements = set(enumerate_bnat(alg))
    image = {(CARRIER, 1): (1, CARRIER)}
    conflicts = []
    pending = [(CARRIER, 1)]
    nodes = (0,) + tuple(alg.nodes)
    while pending:
        source = pending.pop()
        target = image[source]
        for i, raising in itertools.product(nodes, (False, True)):
            moved = _act_carrier_first(alg, source, i, raising)
            moved_image = _act_carrier_last(alg, target, i, raising)
            if moved is None and moved_image is None:
                continue
            where = "{op}_{i} on {v} (x) {x}".format(op='e' if raising else 'f', i=i, v=source[0], x=format_letter(source[1]))
            if moved is None or moved_image is None or moved[0] not in elements or moved_image[1] not in elements:
                conflicts.append(where)
                continue
            known = image.get(moved)
            if known is None:
                image[moved] = moved_image
                pending.append(moved)
            elif known != moved_image:
                conflicts.append(where)
    if conflicts:
        logger.debug("%d arrows of %s disagree across B_natural (x) B_1", len(conflicts), alg)
    return image, tuple(conflicts)

@lru_cache(maxsize=None)
def bnat_b1_step(alg, v, letter):
    """Image of v (x) letter under B_natural (x) B_1 -> B_1 (x) B_natural, as (letter', v')."""
    _require_natural(alg)
    entry = _vertex_table(alg).get((v, letter))
    if entry is not None:
        return entry
    entry = derive_vertices(alg)[0].get((v, letter))
    if entry is not None:
        return entry
    raise OutsideTableError("{v} (x) {letter} is outside the table of {alg}".format(v=v, letter=format_letter(letter), alg=alg))

def _add(first, second):
    return tuple(a + b for a, b in zip(first, second))

@lru_cache(maxsize=None)
def _by_weight(alg):
    """Pairs (letter, v) of B_1 x B_natural grouped by total weight."""
    groups = defaultdict(list)
    for x in alg.letters:
        for w in enumerate_bnat(alg):
            groups[_add(weight(alg, letter_element(alg, x)), bnat_weight(alg, w))].append((x, w))
    return groups

def resolve_by_weight(alg, v, letter):
    """The only (letter', v') of the weight of v (x) letter, or None when several share it."""
    candidates = _by_weight(alg)[_add(bnat_weight(alg, v), weight(alg, letter_element(alg, letter)))]
    return candidates[0] if len(candidates) == 1 else None

def resolve_diagonal(alg, v, letter):
    """(i jb) (x) x -> x (x) (i jb) for x in {i, jb}, i != j; None elsewhere."""
    if v.is_phi:
        return None
    i, j = v.pair
    if i > 0 and j < 0 and i != -j and letter in (i, j):
        return letter, v
    return None

def check_vertex_table(alg):
    """The derived isomorphism is complete and agrees with the listed, diagonal and weight-forced vertices."""
    result = CheckResult('B_natural (x) B_1 table')
    image, conflicts = derive_vertices(alg)
    for where in conflicts:
        result.record(False, where)
    for v, x in itertools.product(enumerate_bnat(alg), alg.letters):
        derived = image.get((v, x))
        where = "{v} (x) {x}".format(v=v, x=format_letter(x))
        result.record(derived is not None, where + " is not derived")
        if derived is None:
            continue
        for rule in (_vertex_table(alg).get, lambda key: resolve_diagonal(alg, *key), lambda key: resolve_by_weight(alg, *key)):
            expected = rule((v, x))
            if expected is not None:
                result.record(expected == derived, "{where}: {expected} against {derived}".format(where=where, expected=expected, derived=derived))
    return result

def _passes_vacuum(alg, v):
    return bnat_b1_step(alg, v, 1) == (1, v)

def T_natural(state, v=CARRIER):
    """T_natural[v](state) and the carrier that leaves the window."""
    alg = state.alg
    _require_natural(alg)
    slack = default_config().runs.window_slack * state.slots + 2
    cells = [letter_of(alg, cell) for cell in state.cells]
    out = []
    j = 0
    while j < len(cells) or not _passes_vacuum(alg, v):
        if j == len(cells):
            if len(cells) - len(state.cells) >= slack:
                raise WindowOverflowError("Carrier {v} never settled on the vacuum".format(v=v))
            cells.append(1)
        letter, v = bnat_b1_step(alg, v, cells[j])
        out.append(letter)
        j += 1
    while len(out) > len(state.cells) and out[-1] == 1:
        out.pop()
    return AutomatonState(alg, [letter_element(alg, letter) for letter in out], state.anchor), v

def _neg(x):
    return max(-x, 0)

def _pos(x):
    return max(x, 0)

def T_natural_on_label(alg, v, label):
    """Closed form of T_natural[v] on a one-soliton label z^m (d,c,b)."""
    _require_natural(alg)
    lowered = alg.rank_lowered()
    b_element = label.element
    k = b_element.capacity
    notation = notation_of(lowered, b_element)
    if notation is None:
        raise ValueError("{b} is not of the form (d,c,b)".format(b=b_element))
    d, c, b = notation
    m = label.power
    if alg.type_class == 'I':
        if v != CARRIER:
            raise NaturalTypeError("Type I only carries {carrier}".format(carrier=CARRIER))
        if b > 0:
            power, image = m - 2, (d + 1, c, b - 1)
        elif c > 0:
            power, image = m - 1, (d + 1, c - 1, 0)
        else:
            power, image = m, (d, 0, 0)
    else:
        a = (k - b - c - d) // 2
        if v == CARRIER:
            if a == b == c == 0:
                power, image = m, (k, 0, 0)
            elif b * d > 0:
                power, image = m - 1, (d - 1, c, b - 1)
            elif c > 0:
                power, image = m - 1, (d + _neg(b - 1), c - 1, _pos(b - 1))
            else:
                power, image = m - 1, (d + _neg(b - 2), 0, _pos(b - 2))
        elif v == BARRED_CARRIER:
            if a > 0:
                power, image = m - 1, (d + 1, c, b + 1)
            elif d > 0:
                power, image = m, (d - 1, c, b + 1)
            elif c > 0:
                power, image = m, (0, c - 1, b + 1)
            else:
                power, image = m, (0, 0, b)
        else:
            raise NaturalTypeError("No closed form for carrier {v}".format(v=v))
    return AffineElement(power, notation_element(lowered, k, *image))

def exit_carrier(alg, first):
    """Carrier leaving the first soliton of a highest weight pair."""
    notation = notation_of(alg.rank_lowered(), first.element)
    k = first.element.capacity
    if alg.type_class == 'II' and notation is not None and notation[1:] == (0, 0) and notation[0] <= k - 2:
        return BARRED_CARRIER
    return CARRIER

def T_natural_on_pair(alg, pair):
    first, second = pair
    return T_natural_on_label(alg, CARRIER, first), T_natural_on_label(alg, exit_carrier(alg, first), second)

def degree(alg, pair, cap=None):
    """Number of T_natural steps down to a fixed point; None past the cap."""
    cap = 4 * sum(a.element.capacity for a in pair) if cap is None else cap
    current = tuple(pair)
    for steps in range(cap + 1):
        image = T_natural_on_pair(alg, current)
        if image == current:
            return steps
        current = image
    return None

@dataclass
class CheckResult(object):
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, ok, message):
        self.checked += 1
        if not ok:
            self.failures.append(message)

@dataclass
class CommutationReport(object):
    alg: object
    l: int
    k: int
    results: list

    @property
    def passed(self):
        return all(result.passed for result in self.results)

def hw_pairs(alg, l, k):
    lowered = alg.rank_lowered()
    return [pair for pair, _ in build_hw_table(lowered, l, k).items()]

def _realize(alg, pair, gap):
    first, second = pair
    gamma_second = second.capacity + 3
    gamma_first = gamma_second + gap + first.capacity
    labels = [SolitonLabel(first.capacity, gamma_first, first), SolitonLabel(second.capacity, gamma_second, second)]
    return labels, build_soliton_state(alg, labels)

def _describe(pair):
    return " (x) ".join("z^{power}{coords}".format(power=a.power, coords=a.element.coords) for a in pair)

def check_commutations(alg, l, k, rs=None):
    """R commutation, realized T_r commutation, weight-distinct preimages and degree."""
    _require_natural(alg)
    if l <= k:
        raise ValueError("Commutation checks need l > k, got ({l},{k})".format(l=l, k=k))
    lowered = alg.rank_lowered()
    rs = range(1, l + 2) if rs is None else rs
    r_check = CheckResult('R commutes with T_natural')
    t_check = CheckResult('T_r commutes with T_natural')
    pair_check = CheckResult('T_natural on realized pairs')
    wt_check = CheckResult('weight distinct preimages')
    degree_check = CheckResult('degree')
    preimages = defaultdict(list)
    for b, c in hw_pairs(alg, l, k):
        pair = (AffineElement(0, b), AffineElement(0, c))
        image = T_natural_on_pair(alg, pair)
        swapped = R_affine(lowered, *pair)
        r_check.record(R_affine(lowered, *image) == T_natural_on_pair(alg, swapped), _describe(pair))

        labels, state = _realize(alg, (b, c), 2 * l + 2)
        try:
            moved, _ = T_natural(state)
            read = [AffineElement(label.gamma, label.element) for label in detect_solitons(moved)]
        except NATURAL_FAILURES as e:
            pair_check.record(False, "{pair}: {error}".format(pair=_describe(pair), error=e))
            moved = None
        else:
            expected = list(T_natural_on_pair(alg, tuple(AffineElement(label.gamma, label.element) for label in labels)))
            pair_check.record(read == expected, _describe(pair))
        for r in (rs if moved is not None else ()):
            where = "r={r} {pair}".format(r=r, pair=_describe(pair))
            try:
                left, _ = T_natural(evolve_Tl(state, r).state)
                right = evolve_Tl(moved, r).state
            except NATURAL_FAILURES as e:
                t_check.record(False, "{where}: {error}".format(where=where, error=e))
                continue
            t_check.record(left == right, where)

        deg = degree(alg, pair)
        fixed = b == u(lowered, l) and c == u(lowered, k)
        if deg is None:
            degree_check.record(False, "{pair} has no finite degree".format(pair=_describe(pair)))
        else:
            next_deg = degree(alg, image)
            consistent = (deg == 0) == fixed and (deg == 0 or next_deg == deg - 1)
            degree_check.record(consistent, _describe(pair))

        for m1, m2 in itertools.product(range(3), repeat=2):
            shifted = (AffineElement(m1, b), AffineElement(m2, c))
            preimages[T_natural_on_pair(alg, shifted)].append(weight(lowered, (b, c)))
    for image, weights in preimages.items():
        wt_check.record(len(set(weights)) == len(weights), _describe(image))
    report = CommutationReport(alg, l, k, [r_check, t_check, pair_check, wt_check, degree_check])
    logger.debug("Commutation checks for %s at (%d,%d): %s", alg, l, k, "pass" if report.passed else "fail")
    return report

def check_realized_labels(alg, kmax=6):
    """T_natural on one-soliton states against its closed form, every (d,c,b) with k <= kmax."""
    _require_natural(alg)
    lowered = alg.rank_lowered()
    carriers = [CARRIER] if alg.type_class == 'I' else [CARRIER, BARRED_CARRIER]
    result = CheckResult('T_natural on one-soliton states')
    for k in range(1, kmax + 1):
        for b in enumerate_Bl(lowered, k):
            if notation_of(lowered, b) is None:
                continue
            label = SolitonLabel(k, k + 3, b)
            state = build_soliton_state(alg, [label])
            for v in carriers:
                expected = T_natural_on_label(alg, v, AffineElement(label.gamma, b))
                try:
                    moved, _ = T_natural(state, v)
                    read = [AffineElement(found.gamma, found.element) for found in detect_solitons(moved)]
                except NATURAL_FAILURES as e:
                    result.record(False, "{v} on {b}: {error}".format(v=v, b=b.coords, error=e))
                    continue
                result.record(read == [expected], "{v} on {b}".format(v=v, b=b.coords))
    return result

def check_zero_arrows(alg):
    """f_0 and e_0 on B_natural are mutually inverse with one constant weight shift."""
    result = CheckResult('zero arrows')
    shifts = set()
    for source, target in zero_arrows(alg).items():
        result.record(e0(alg, target) == source, "{source} -> {target}".format(source=source, target=target))
        shifts.add(tuple(a - b for a, b in zip(bnat_weight(alg, target), bnat_weight(alg, source))))
    result.record(len(shifts) == 1, "weight shifts {shifts}".format(shifts=sorted(shifts)))
    return result
