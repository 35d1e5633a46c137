"""Combinatorial R-matrix B_l (x) B_k -> B_k (x) B_l and its energy function H.

R is computed on classical highest weight elements from closed-form tables and
carried to every other element by replaying the raising path. Type III families
go through the coordinate doubling omega into C^(1)_n.
"""
import itertools
import logging
import random
from dataclasses import dataclass
from functools import lru_cache

from solitonca.config import default_config
from solitonca.crystal import (Algebra, RowElement, ElementError, enumerate_Bl, format_element, is_highest_weight,
                               letter_element, letter_of, lower_along, notation_element, raise_to_hw, u)

logger = logging.getLogger(__name__)

R_CACHE_SIZE = 1 << 16

class TableLookupError(Exception):
    pass

class OmegaError(Exception):
    pass

@dataclass(frozen=True)
class AffineElement(object):
    power: int
    element: RowElement

class HWTable(object):
    def __init__(self, alg, l, k, entries):
        self.alg = alg
        self.l = l
        self.k = k
        self.forward = {}
        self.inverse = {}
        for (b, c), (c_new, b_new, h) in entries:
            self.forward[(b, c)] = (c_new, b_new, h)
            self.inverse[(c_new, b_new)] = (b, c, h)
        if len(self.inverse) != len(self.forward):
            raise TableLookupError("Table of {alg} at ({l},{k}) is not injective".format(alg=alg, l=l, k=k))

    def __len__(self):
        return len(self.forward)

    def items(self):
        return sorted(self.forward.items(), key=lambda item: (item[0][0].coords, item[0][1].coords))

def _has_x2(alg):
    return alg.classical == 'A' or alg.rank >= 2

def _type_a_entries(alg, l, k):
    for x2 in range(k + 1):
        x1 = k - x2
        hw = (u(alg, l), notation_element(alg, k, x1, x2))
        yield hw, (u(alg, k), notation_element(alg, l, x1 + l - k, x2), x1 + k)

def _type_i_entries(alg, l, k):
    for b in range(k + 1):
        for c in range(k + 1 - b):
            if c and not _has_x2(alg):
                continue
            d = k - b - c
            hw = (u(alg, l), notation_element(alg, k, d, c, b))
            yield hw, (u(alg, k), notation_element(alg, l, l - b - c, c, b), 2 * k - 2 * b - c)

def _type_ii_image(l, k, f, d, c, b):
    """Image and energy of (f) (x) (d,c,b); returns ((x1) in B_k, (d',c',b') in B_l, H)."""
    e = (l - f) // 2
    a = (k - b - c - d) // 2
    if a >= e:
        y = min(l - k, max(b - d, 0))
        return k - 2 * e, (d + l - k - y, c, b - y), k + a - e + max(d - b, 0)
    if d - b <= e - a <= l - k:
        z = min(b - d + e - a, l - k - e + a)
        return k - 2 * a, (d + l - k - e + a - z, c, b + e - a - z), k
    w = min(l - k, max(2 * e - 2 * a - d + b, 0))
    return k - 2 * e + 2 * w, (d + l - k - w, c, b + w), k + max(e - a - l + k, d - b - e + a)

def _type_ii_entries(alg, l, k):
    for f in range(l % 2, l + 1, 2):
        for b in range(k + 1):
            for c in range(k + 1 - b):
                if c and not _has_x2(alg):
                    continue
                if b + c > f:
                    continue
                for d in range(k - b - c, -1, -2):
                    first, second, h = _type_ii_image(l, k, f, d, c, b)
                    hw = (notation_element(alg, l, f), notation_element(alg, k, d, c, b))
                    yield hw, (notation_element(alg, k, first), notation_element(alg, l, *second), h)

def _type_iii_entries(alg, l, k):
    target = omega_algebra(alg)
    for b in enumerate_Bl(alg, l):
        if not is_highest_weight(alg, b):
            continue
        for c in enumerate_Bl(alg, k):
            if not is_highest_weight(alg, (b, c)):
                continue
            c_new, b_new, h = R_general(target, omega(alg, b), omega(alg, c))
            yield (b, c), (omega_inverse(alg, c_new), omega_inverse(alg, b_new), h)

ENTRY_BUILDERS = {
    'A': _type_a_entries,
    'I': _type_i_entries,
    'II': _type_ii_entries,
    'III': _type_iii_entries,
}

def _tabulate(alg, l, k):
    try:
        table = HWTable(alg, l, k, list(ENTRY_BUILDERS[alg.type_class](alg, l, k)))
    except (ElementError, OmegaError) as e:
        raise TableLookupError("Cannot tabulate {alg} at ({l},{k}): {error}".format(alg=alg, l=l, k=k, error=e))
    logger.debug("Built highest weight table for %s at (%d,%d) with %d entries", alg, l, k, len(table))
    return table

_cached_table = lru_cache(maxsize=default_config().runs.resolve_cache_size())(_tabulate)

def build_hw_table(alg, l, k):
    if l < k:
        raise ValueError("Tables are indexed by l >= k, got ({l},{k})".format(l=l, k=k))
    return _cached_table(alg, l, k)

@lru_cache(maxsize=R_CACHE_SIZE)
def R_general(alg, b, c):
    """R(b (x) c) = c~ (x) b~, returned as (c~, b~, H(b (x) c))."""
    l, k = b.capacity, c.capacity
    hw, path = raise_to_hw(alg, (b, c))
    if l >= k:
        entry = build_hw_table(alg, l, k).forward.get(hw)
    else:
        entry = build_hw_table(alg, k, l).inverse.get(hw)
    if entry is None:
        raise TableLookupError("No table entry for {b} (x) {c} in {alg}".format(b=format_element(alg, hw[0]), c=format_element(alg, hw[1]), alg=alg))
    first, second, h = entry
    c_new, b_new = lower_along(alg, (first, second), path)
    return c_new, b_new, h

def energy(alg, b, c):
    return R_general(alg, b, c)[2]

def R_affine(alg, left, right):
    c_new, b_new, h = R_general(alg, left.element, right.element)
    return AffineElement(right.power + h, c_new), AffineElement(left.power - h, b_new)

def minimum_energy(alg, l, k):
    return min(energy(alg, b, c) for b in enumerate_Bl(alg, l) for c in enumerate_Bl(alg, k))

def _require_type_iii(alg):
    if alg.type_class != 'III':
        raise OmegaError("{alg} is not of Type III".format(alg=alg))

def omega_algebra(alg):
    _require_type_iii(alg)
    return Algebra('C1', alg.rank)

def omega(alg, b):
    """Embed B_l of a Type III family into B_2l of C^(1)_n."""
    _require_type_iii(alg)
    n = alg.rank
    if alg.has_zero:
        x0 = b.coords[n]
        coords = [2 * x for x in b.coords[:n] + b.coords[n + 1:]]
        coords[n - 1] += x0
        coords[n] += x0
    else:
        coords = [2 * x for x in b.coords]
    return RowElement(2 * b.capacity, tuple(coords))

def omega_inverse(alg, b):
    _require_type_iii(alg)
    n = alg.rank
    coords = list(b.coords)
    if b.capacity % 2:
        raise OmegaError("Capacity {l} is odd".format(l=b.capacity))
    x0 = 0
    if alg.has_zero:
        x0 = coords[n - 1] % 2
        if coords[n] % 2 != x0:
            raise OmegaError("{coords} is not in the image of omega".format(coords=b.coords))
        coords[n - 1] -= x0
        coords[n] -= x0
    if any(x % 2 for x in coords):
        raise OmegaError("{coords} is not in the image of omega".format(coords=b.coords))
    halves = [x // 2 for x in coords]
    if alg.has_zero:
        halves = halves[:n] + [x0] + halves[n:]
    return RowElement(b.capacity // 2, tuple(halves))

def eta(alg, x):
    """Double a B_1 letter of a Type III family into two C^(1)_n letters."""
    target = omega_algebra(alg)
    letter = letter_of(alg, x)
    if letter is None:
        pair = (1, -1)
    elif letter == 0:
        pair = (-alg.rank, alg.rank)
    else:
        pair = (letter, letter)
    return tuple(letter_element(target, a) for a in pair)

def _apply_R(alg, word, position):
    left, right = R_affine(alg, word[position], word[position + 1])
    return word[:position] + (left, right) + word[position + 2:]

def yang_baxter_check(alg, l1, l2, l3, samples=None, seed=0):
    """Compare (R12)(R23)(R12) with (R23)(R12)(R23), exhaustively or on seeded samples."""
    spaces = [enumerate_Bl(alg, l) for l in (l1, l2, l3)]
    if samples is None:
        triples = itertools.product(*spaces)
    else:
        rng = random.Random(seed)
        triples = [tuple(rng.choice(space) for space in spaces) for _ in range(samples)]
    for triple in triples:
        word = tuple(AffineElement(0, b) for b in triple)
        left = _apply_R(alg, _apply_R(alg, _apply_R(alg, word, 0), 1), 0)
        right = _apply_R(alg, _apply_R(alg, _apply_R(alg, word, 1), 0), 1)
        if left != right:
            logger.debug("Yang-Baxter fails for %s on %s", alg, [format_element(alg, b) for b in triple])
            return False
    return True
