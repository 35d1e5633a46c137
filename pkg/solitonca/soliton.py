"""Solitons: the embedding iota_l, detection with phases, and scattering runs.

A soliton of length l is labelled by an element of B_l for the same family one
rank down. Its phase gamma is the slot of its first letter counted from the right
end of the window, and its affine label is z^gamma b, or z^(2 gamma) b and
z^(2 gamma - 1) b for the varsigma = 2 families.
"""
import logging
import random
from dataclasses import dataclass, field

from solitonca.automaton import AutomatonState, evolve_Tl
from solitonca.config import default_config
from solitonca.crystal import (ElementError, enumerate_Bl, from_letters, is_member, is_vacuum, letter_element, letter_of,
                               make_algebra, phi, row_word, u, validate)
from solitonca.rmatrix import AffineElement, R_affine

logger = logging.getLogger(__name__)

class NotSolitonState(Exception):
    pass

class ScatteringTimeout(Exception):
    pass

class PlacementError(Exception):
    pass

@dataclass(frozen=True)
class SolitonLabel(object):
    length: int
    gamma: int
    element: object

def _shift_letter(letter, step):
    if letter == 0:
        return 0
    if letter > 0:
        return letter + step
    return letter - step

def iota(alg, l, b):
    """The word of B_1 letters of alg carrying the soliton labelled by b."""
    lowered = alg.rank_lowered()
    if b.capacity != l:
        raise ElementError("Label {b} does not have capacity {l}".format(b=b, l=l))
    validate(lowered, b)
    padding, odd = divmod(l - b.size, 2)
    if alg.type_class in ('A', 'I') and (padding or odd):
        raise ElementError("Label {b} of {alg} must fill all {l} slots".format(b=b, alg=alg, l=l))
    word = [phi(alg)] if odd else []
    word.extend(letter_element(alg, -1) for _ in range(padding))
    word.extend(letter_element(alg, _shift_letter(letter, 1)) for letter in row_word(lowered, b))
    word.extend(letter_element(alg, 1) for _ in range(padding))
    return word

def exponent(alg, label):
    if alg.varsigma == 1:
        return label.gamma
    odd = (label.length - label.element.size) % 2
    return 2 * label.gamma - odd

def affine(alg, label):
    return AffineElement(exponent(alg, label), label.element)

def _read_soliton(alg, letters, start):
    """Parse one soliton block beginning at letters[start]; returns (label element, end)."""
    lowered = alg.rank_lowered()
    j = start
    odd = 0
    if letters[j] is None:
        odd = 1
        j += 1
    padding = 0
    while j < len(letters) and letters[j] == -1:
        padding += 1
        j += 1
    middle = []
    while j < len(letters) and letters[j] not in (None, 1, -1):
        if middle and alg.j_key(letters[j]) > alg.j_key(middle[-1]):
            break
        middle.append(letters[j])
        j += 1
    for _ in range(padding):
        if j == len(letters) or letters[j] != 1:
            raise NotSolitonState("Soliton at cell {start} lacks its trailing 1's".format(start=start))
        j += 1
    if alg.type_class in ('A', 'I') and (padding or odd):
        raise NotSolitonState("Cell {start} does not start a soliton of {alg}".format(start=start, alg=alg))
    length = odd + 2 * padding + len(middle)
    if length == 0:
        raise NotSolitonState("Cell {start} does not start a soliton".format(start=start))
    element = from_letters(lowered, length, [_shift_letter(letter, -1) for letter in middle])
    if not is_member(lowered, element):
        raise NotSolitonState("Block at cell {start} is not a soliton of {alg}".format(start=start, alg=alg))
    return element, j

def detect_solitons(state):
    """Labels of the solitons in state from left to right, or NotSolitonState."""
    alg = state.alg
    letters = []
    gammas = []
    for gamma, cell in state.phases():
        if cell.capacity > 1:
            if not is_vacuum(alg, cell):
                raise NotSolitonState("Site at {gamma} is excited".format(gamma=gamma))
            continue
        letters.append(letter_of(alg, cell))
        gammas.append(gamma)
    # vacuum past the right end closes padded blocks cut by the window
    edge = state.anchor - state.slots
    for step in range(letters.count(-1)):
        letters.append(1)
        gammas.append(edge - step)

    labels = []
    last_gamma = None
    j = 0
    while j < len(letters):
        if letters[j] == 1:
            j += 1
            continue
        element, end = _read_soliton(alg, letters, j)
        # every slot between two blocks is vacuum, u_m sites included
        if labels and last_gamma - gammas[j] - 1 < labels[-1].length:
            raise NotSolitonState("Solitons at {left} and {right} are too close".format(left=labels[-1].gamma, right=gammas[j]))
        labels.append(SolitonLabel(element.capacity, gammas[j], element))
        last_gamma = gammas[end - 1]
        j = end
    return labels

def build_soliton_state(alg, labels, region=None):
    """Place iota images at their phases in a vacuum window.

    region is an optional (gamma, capacities) pair: sites u_m of the given
    capacities whose first slot sits at gamma.
    """
    blocks = [(label.gamma, iota(alg, label.length, label.element)) for label in labels]
    if region is not None:
        region_gamma, capacities = region
        blocks.append((region_gamma, [u(alg, m) for m in capacities]))
    if not blocks:
        return AutomatonState(alg, [u(alg, 1)])
    blocks.sort(key=lambda block: -block[0])
    anchor = blocks[0][0]
    cells = []
    gamma = anchor
    for top, block in blocks:
        if top > gamma:
            raise PlacementError("Block at {top} overlaps its left neighbour".format(top=top))
        cells.extend(u(alg, 1) for _ in range(gamma - top))
        cells.extend(block)
        gamma = top - sum(cell.capacity for cell in block)
    if gamma < 0:
        raise PlacementError("Block runs past the right end of the window")
    cells.extend(u(alg, 1) for _ in range(gamma))
    return AutomatonState(alg, cells, anchor)

def compose_R(alg, affines, leftmost=True):
    """Sort affine labels into increasing capacity by adjacent R swaps.

    Swaps the leftmost (or rightmost) out-of-order pair first; returns the
    reordered word and the energies met on the way.
    """
    word = list(affines)
    energies = []
    while True:
        inversions = [j for j in range(len(word) - 1) if word[j].element.capacity > word[j + 1].element.capacity]
        if not inversions:
            return word, energies
        j = inversions[0] if leftmost else inversions[-1]
        left, right = R_affine(alg, word[j], word[j + 1])
        energies.append(left.power - word[j + 1].power)
        word[j:j + 2] = [left, right]

def delta(capacities, i):
    return sum(max(m - i, 0) for m in capacities)

def predict(alg, incoming, capacities=(), leftmost=True):
    lowered = alg.rank_lowered()
    word, energies = compose_R(lowered, [affine(alg, label) for label in incoming], leftmost)
    shifted = [AffineElement(a.power - alg.varsigma * delta(capacities, a.element.capacity), a.element) for a in word]
    return shifted, energies

def predict_inhomogeneous(alg, incoming, capacities):
    return predict(alg, incoming, capacities)[0]

@dataclass
class ScatteringOutcome(object):
    incoming: list
    incoming_affine: list
    outgoing: list
    normalized: list
    predicted: list
    alternative: list
    energies: list
    steps: int
    region: object = field(default=None)

    @property
    def match(self):
        return self.normalized == self.predicted and self.alternative == self.predicted

def _completed(alg, incoming, labels, region):
    lengths = [label.length for label in labels]
    if sorted(lengths) != sorted(label.length for label in incoming):
        return False
    if any(a >= b for a, b in zip(lengths, lengths[1:])):
        return False
    if region is not None:
        region_end = region[0] - sum(region[1])
        return all(label.gamma <= region_end for label in labels)
    return True

def scattering_experiment(alg, incoming, r=None, t_max=None, region=None):
    if not incoming:
        raise PlacementError("No solitons to scatter")
    lengths = [label.length for label in incoming]
    r = max(lengths) + 1 if r is None else r
    t_max = default_config().runs.tmax if t_max is None else t_max
    state = build_soliton_state(alg, incoming, region)
    try:
        detected = detect_solitons(state)
    except NotSolitonState as e:
        raise PlacementError("Solitons are not separated enough: {error}".format(error=e))
    if detected != list(incoming):
        raise PlacementError("Placed state reads back as {detected}".format(detected=detected))

    capacities = region[1] if region is not None else ()
    predicted, energies = predict(alg, incoming, capacities)
    alternative, _ = predict(alg, incoming, capacities, leftmost=False)
    for t in range(1, t_max + 1):
        state = evolve_Tl(state, r).state
        try:
            labels = detect_solitons(state)
        except NotSolitonState:
            logger.debug("t=%d: %s is mid collision", t, alg)
            continue
        if not _completed(alg, incoming, labels, region):
            continue
        normalized = [AffineElement(exponent(alg, label) + alg.varsigma * min(r, label.length) * t, label.element) for label in labels]
        logger.debug("Scattering in %s completed after %d steps", alg, t)
        incoming_affine = [affine(alg, label) for label in incoming]
        return ScatteringOutcome(list(incoming), incoming_affine, labels, normalized, predicted, alternative, energies, t, region)
    raise ScatteringTimeout("Solitons of {alg} still interact after {t_max} steps".format(alg=alg, t_max=t_max))

def experiment_algebra(family):
    """The smallest rank whose lowered algebra is itself enumerable at minimal rank."""
    config = default_config().find_family_by_name(family)
    return make_algebra(family, config.min_rank + 1)

def random_label(alg, l, rng):
    return rng.choice(enumerate_Bl(alg.rank_lowered(), l))

def random_placement(alg, lengths, rng, capacities=()):
    """Labels of the given lengths, left to right, with gaps max(l_i, l_i+1) + 1."""
    elements = [random_label(alg, l, rng) for l in lengths]
    region_slots = sum(capacities)
    gamma = region_slots + 1 + lengths[-1]
    placed = [SolitonLabel(lengths[-1], gamma, elements[-1])]
    for j in range(len(lengths) - 2, -1, -1):
        gamma += max(lengths[j], lengths[j + 1]) + 1 + lengths[j]
        placed.insert(0, SolitonLabel(lengths[j], gamma, elements[j]))
    region = (region_slots, list(capacities)) if capacities else None
    return placed, region

def random_experiment(alg, lengths, seed=0, rng=None, capacities=(), r=None):
    rng = random.Random(seed) if rng is None else rng
    incoming, region = random_placement(alg, lengths, rng, capacities)
    slots = incoming[0].gamma
    return scattering_experiment(alg, incoming, r=r, t_max=4 * slots + 10, region=region)
