"""Crystals B_l of the supported affine families.

An element of B_l is a RowElement: a coordinate vector plus its capacity l. The
classical Kashiwara operators act on the row word of an element, the coordinate
letters written in weakly decreasing order, through the tensor product signature
rule. Tensor words are plain tuples of RowElements.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache

from solitonca.config import default_config, NoFamilyException

logger = logging.getLogger(__name__)

class AlgebraError(Exception):
    pass

class ElementError(Exception):
    pass

class NodeError(Exception):
    pass

ELEMENT_PATTERN = re.compile(r'^B\[(\d+)\]\(([-\d,\s]*)\)$')
COORDS_PATTERN = re.compile(r'^\(([-\d,\s]*)\)$')
LETTER_PATTERN = re.compile(r'^(\d+)(b?)$')
PHI_TOKEN = 'phi'

@lru_cache(maxsize=None)
def _family_config(family):
    try:
        return default_config().find_family_by_name(family)
    except NoFamilyException as e:
        raise AlgebraError(str(e))

@dataclass(frozen=True)
class Algebra(object):
    family: str
    rank: int

    def __post_init__(self):
        _family_config(self.family)
        if self.rank < 1:
            raise AlgebraError("Rank must be positive, got {rank}".format(rank=self.rank))

    def __str__(self):
        return "{family}:{rank}".format(family=self.family, rank=self.rank)

    @property
    def config(self):
        return _family_config(self.family)

    @property
    def type_class(self):
        return self.config.type_class

    @property
    def varsigma(self):
        return self.config.varsigma

    @property
    def classical(self):
        return self.config.classical

    @property
    def has_zero(self):
        return self.config.has_zero

    @property
    def has_phi(self):
        return self.config.has_phi

    @property
    def nodes(self):
        return tuple(range(1, self.rank + 1))

    @property
    def n_coords(self):
        if self.classical == 'A':
            return self.rank + 1
        return 2 * self.rank + (1 if self.has_zero else 0)

    @property
    def weight_length(self):
        return self.rank + 1 if self.classical == 'A' else self.rank

    @property
    def letters(self):
        """The B_1 alphabet in J-order."""
        if self.classical == 'A':
            return tuple(range(1, self.rank + 2))
        zero = (0,) if self.has_zero else ()
        return tuple(range(1, self.rank + 1)) + zero + tuple(-i for i in range(self.rank, 0, -1))

    def index_of(self, letter):
        if self.classical == 'A' or letter > 0:
            return letter - 1
        if letter == 0:
            return self.rank
        return self.n_coords + letter

    def letter_at(self, index):
        if self.classical == 'A' or index < self.rank:
            return index + 1
        if self.has_zero and index == self.rank:
            return 0
        return index - self.n_coords

    def j_key(self, letter):
        if self.classical == 'A' or letter > 0:
            return letter
        if letter == 0:
            return self.rank + 0.5
        return 2 * self.rank + 1 + letter

    def rank_lowered(self):
        """The same family one rank down, where soliton labels live."""
        if self.rank < 2:
            raise AlgebraError("{alg} has no rank lowered algebra".format(alg=self))
        return Algebra(self.family, self.rank - 1)

@dataclass(frozen=True, order=True)
class RowElement(object):
    capacity: int
    coords: tuple

    @property
    def size(self):
        return sum(self.coords)

def make_algebra(family, rank):
    alg = Algebra(family, int(rank))
    if alg.rank < alg.config.min_rank:
        raise AlgebraError("{title} needs rank at least {min_rank}, got {rank}".format(title=alg.config.title, min_rank=alg.config.min_rank, rank=alg.rank))
    return alg

def parse_algebra(descriptor):
    try:
        family, rank = descriptor.split(':')
        rank = int(rank)
    except ValueError:
        raise AlgebraError("Algebra descriptor {descriptor} should look like C1:3".format(descriptor=descriptor))
    return make_algebra(family.strip(), rank)

def _allowed_sums(alg, l):
    rule = alg.config.sum_rule
    if rule == 'equal':
        return [l]
    if rule == 'at_most':
        return list(range(l + 1))
    return list(range(l % 2, l + 1, 2))

def is_member(alg, b):
    coords = b.coords
    if b.capacity < 1 or len(coords) != alg.n_coords or any(x < 0 for x in coords):
        return False
    if sum(coords) not in _allowed_sums(alg, b.capacity):
        return False
    if alg.has_zero and coords[alg.rank] > 1:
        return False
    if alg.classical == 'D' and coords[alg.rank - 1] > 0 and coords[alg.rank] > 0:
        return False
    return True

def validate(alg, b):
    if not is_member(alg, b):
        raise ElementError("{element} is not an element of B_{l} for {alg}".format(element=format_element(alg, b), l=b.capacity, alg=alg))
    return b

@lru_cache(maxsize=None)
def enumerate_Bl(alg, l):
    if l < 1:
        raise ElementError("Capacity must be positive, got {l}".format(l=l))
    width = alg.n_coords
    elements = []
    for total in _allowed_sums(alg, l):
        for bars in itertools.combinations(range(total + width - 1), width - 1):
            edges = (-1,) + bars + (total + width - 1,)
            coords = tuple(edges[j + 1] - edges[j] - 1 for j in range(width))
            b = RowElement(l, coords)
            if is_member(alg, b):
                elements.append(b)
    logger.debug("Enumerated %d elements of B_%d for %s", len(elements), l, alg)
    return tuple(sorted(elements, key=lambda b: b.coords))

def u(alg, l):
    return RowElement(l, (l,) + (0,) * (alg.n_coords - 1))

def phi(alg):
    if not alg.has_phi:
        raise ElementError("{alg} has no letter phi".format(alg=alg))
    return RowElement(1, (0,) * alg.n_coords)

def letter_element(alg, letter):
    if letter not in alg.letters:
        raise ElementError("No letter {letter} in {alg}".format(letter=letter, alg=alg))
    coords = [0] * alg.n_coords
    coords[alg.index_of(letter)] = 1
    return RowElement(1, tuple(coords))

def letter_of(alg, b):
    """The letter of a B_1 element, None for phi."""
    if b.capacity != 1:
        raise ElementError("{element} is not a letter".format(element=b))
    if b.size == 0:
        return None
    return alg.letter_at(b.coords.index(1))

def enumerate_B1(alg):
    letters = [letter_element(alg, letter) for letter in alg.letters]
    if alg.has_phi:
        letters.append(phi(alg))
    return letters

def is_vacuum(alg, b):
    return b == u(alg, b.capacity)

def notation_element(alg, capacity, x1, x2=0, xbar1=0):
    """The element (x1, x2, xbar1) with every other coordinate zero."""
    if x2 and alg.classical != 'A' and alg.rank < 2:
        raise ElementError("{alg} has no coordinate x_2".format(alg=alg))
    if xbar1 and alg.classical == 'A':
        raise ElementError("{alg} has no coordinate xbar_1".format(alg=alg))
    coords = [0] * alg.n_coords
    coords[0] = x1
    if x2:
        coords[1] = x2
    if xbar1:
        coords[-1] = xbar1
    return validate(alg, RowElement(capacity, tuple(coords)))

def notation_of(alg, b):
    """Read (x1, x2, xbar1) back; None unless every other coordinate is zero."""
    coords = list(b.coords)
    x1 = coords[0]
    x2 = coords[1] if alg.classical == 'A' or alg.rank >= 2 else 0
    xbar1 = coords[-1] if alg.classical != 'A' else 0
    rest = sum(coords) - x1 - x2 - xbar1
    if rest:
        return None
    return x1, x2, xbar1

@lru_cache(maxsize=None)
def _descending_indices(alg):
    return tuple(sorted(range(alg.n_coords), key=lambda index: -alg.j_key(alg.letter_at(index))))

def row_word(alg, b):
    word = []
    for index in _descending_indices(alg):
        word.extend([alg.letter_at(index)] * b.coords[index])
    return word

def from_letters(alg, capacity, letters):
    coords = [0] * alg.n_coords
    for letter in letters:
        coords[alg.index_of(letter)] += 1
    return RowElement(capacity, tuple(coords))

@lru_cache(maxsize=None)
def _node_chains(alg, i):
    n = alg.rank
    if i < 1 or i > n:
        raise NodeError("Node {i} out of range for {alg}".format(i=i, alg=alg))
    if alg.classical == 'A':
        chains = [(i, i + 1)]
    elif i < n:
        chains = [(i, i + 1), (-(i + 1), -i)]
    elif alg.classical == 'B':
        chains = [(n, 0, -n)]
    elif alg.classical == 'C':
        chains = [(n, -n)]
    else:
        chains = [(n - 1, -n), (n, -(n - 1))]
    return dict((letter, (chain, position)) for chain in chains for position, letter in enumerate(chain))

def letter_eps_phi(alg, letter, i):
    entry = _node_chains(alg, i).get(letter)
    if entry is None:
        return 0, 0
    chain, position = entry
    return position, len(chain) - 1 - position

def _signature(alg, letters, i):
    """Unmatched minus positions and unmatched plus positions, left to right."""
    chains = _node_chains(alg, i)
    minuses = []
    pluses = []
    for position, letter in enumerate(letters):
        entry = chains.get(letter)
        if entry is None:
            continue
        chain, index = entry
        for _ in range(index):
            if pluses:
                pluses.pop()
            else:
                minuses.append(position)
        pluses.extend([position] * (len(chain) - 1 - index))
    return minuses, pluses

def _as_factors(element):
    if isinstance(element, RowElement):
        return (element,), True
    return tuple(element), False

def act_on_letters(alg, letters, i, raising=False):
    """Apply f_i (or e_i when raising) to a word of letters read as a tensor product."""
    minuses, pluses = _signature(alg, letters, i)
    if raising:
        if not minuses:
            return None
        position, step = minuses[-1], -1
    else:
        if not pluses:
            return None
        position, step = pluses[0], 1
    chain, index = _node_chains(alg, i)[letters[position]]
    result = list(letters)
    result[position] = chain[index + step]
    return result

def letters_eps_phi(alg, letters, i):
    minuses, pluses = _signature(alg, letters, i)
    return len(minuses), len(pluses)

def _act(alg, element, i, raising):
    factors, single = _as_factors(element)
    words = [row_word(alg, b) for b in factors]
    letters = act_on_letters(alg, [letter for word in words for letter in word], i, raising)
    if letters is None:
        return None
    result = []
    start = 0
    for b, word in zip(factors, words):
        result.append(from_letters(alg, b.capacity, letters[start:start + len(word)]))
        start += len(word)
    return result[0] if single else tuple(result)

def classical_f(alg, element, i):
    return _act(alg, element, i, raising=False)

def classical_e(alg, element, i):
    return _act(alg, element, i, raising=True)

def eps_phi(alg, element, i):
    factors, _ = _as_factors(element)
    return letters_eps_phi(alg, [letter for b in factors for letter in row_word(alg, b)], i)

def weight(alg, element):
    factors, _ = _as_factors(element)
    wt = [0] * alg.weight_length
    for b in factors:
        for index, x in enumerate(b.coords):
            letter = alg.letter_at(index)
            if letter > 0:
                wt[letter - 1] += x
            elif letter < 0:
                wt[-letter - 1] -= x
    return tuple(wt)

def simple_root(alg, i):
    _node_chains(alg, i)
    root = [0] * alg.weight_length
    if alg.classical == 'A' or i < alg.rank:
        root[i - 1] += 1
        root[i] -= 1
    elif alg.classical == 'B':
        root[i - 1] = 1
    elif alg.classical == 'C':
        root[i - 1] = 2
    else:
        root[i - 2] = 1
        root[i - 1] = 1
    return tuple(root)

def is_highest_weight(alg, element):
    return all(classical_e(alg, element, i) is None for i in alg.nodes)

def raise_to_hw(alg, word):
    """Raise to a classical highest weight element, recording the nodes used."""
    path = []
    current = word
    while True:
        for i in alg.nodes:
            raised = classical_e(alg, current, i)
            if raised is not None:
                current = raised
                path.append(i)
                break
        else:
            return current, path

def lower_along(alg, word, path):
    current = word
    for i in reversed(path):
        current = classical_f(alg, current, i)
        if current is None:
            raise ElementError("Cannot replay node {i} on {word}".format(i=i, word=word))
    return current

def format_letter(letter):
    if letter is None:
        return PHI_TOKEN
    if letter < 0:
        return "{i}b".format(i=-letter)
    return str(letter)

def format_coords(b):
    return "({coords})".format(coords=",".join(str(x) for x in b.coords))

def format_element(alg, b):
    if b.capacity == 1 and len(b.coords) == alg.n_coords and b.size <= 1:
        return format_letter(letter_of(alg, b))
    return "B[{l}]{coords}".format(l=b.capacity, coords=format_coords(b))

def parse_letter(alg, token):
    if token == PHI_TOKEN:
        return phi(alg)
    match = LETTER_PATTERN.match(token)
    if match is None:
        raise ElementError("Cannot parse letter {token}".format(token=token))
    letter = -int(match.group(1)) if match.group(2) else int(match.group(1))
    if match.group(2) and letter == 0:
        raise ElementError("Cannot parse letter {token}".format(token=token))
    return letter_element(alg, letter)

def _parse_coords(text):
    try:
        return tuple(int(x) for x in text.split(',') if x.strip())
    except ValueError:
        raise ElementError("Cannot parse coordinates {text}".format(text=text))

def parse_element(alg, token, capacity=None):
    """Parse a letter, `B[l](x,...)`, or `(x,...)` when the capacity is known."""
    token = token.strip()
    match = ELEMENT_PATTERN.match(token)
    if match is not None:
        b = RowElement(int(match.group(1)), _parse_coords(match.group(2)))
    else:
        match = COORDS_PATTERN.match(token)
        if match is not None:
            if capacity is None:
                raise ElementError("Coordinates {token} need a capacity".format(token=token))
            b = RowElement(capacity, _parse_coords(match.group(1)))
        else:
            b = parse_letter(alg, token)
    if capacity is not None and b.capacity != capacity:
        raise ElementError("{token} does not have capacity {capacity}".format(token=token, capacity=capacity))
    return validate(alg, b)
