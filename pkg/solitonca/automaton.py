"""Carrier time evolutions T_l of the soliton cellular automaton.

A state is a finite window of cells in a sea of vacuum. Each cell is an element of
some B_m (m = 1 on a homogeneous lattice). Phases are counted in slots from the
right: the cell j sits at gamma = anchor - (slots to the left of j), where a B_m
cell takes m slots.
"""
import logging
from dataclasses import dataclass

from solitonca.config import default_config
from solitonca.crystal import ElementError, format_element, is_vacuum, parse_algebra, parse_element, u
from solitonca.rmatrix import R_general

logger = logging.getLogger(__name__)

class WindowOverflowError(Exception):
    pass

class SpectrumError(Exception):
    pass

class StateParseError(Exception):
    pass

class ExcitedSiteError(Exception):
    pass

class AutomatonState(object):
    def __init__(self, alg, cells, anchor=None):
        self.alg = alg
        self.cells = tuple(cells)
        self.anchor = self.slots if anchor is None else anchor

    @property
    def slots(self):
        return sum(cell.capacity for cell in self.cells)

    @property
    def capacities(self):
        return [cell.capacity for cell in self.cells]

    @property
    def is_homogeneous(self):
        return all(cell.capacity == 1 for cell in self.cells)

    def phases(self):
        gamma = self.anchor
        for cell in self.cells:
            yield gamma, cell
            gamma -= cell.capacity

    def occupied(self):
        """The (gamma, cell) pairs that differ from the homogeneous vacuum."""
        return tuple((gamma, cell) for gamma, cell in self.phases() if cell.capacity > 1 or not is_vacuum(self.alg, cell))

    def text(self):
        return " ".join(format_element(self.alg, cell) for cell in self.cells)

    def __eq__(self, other):
        if not isinstance(other, AutomatonState):
            return NotImplemented
        return self.alg == other.alg and self.occupied() == other.occupied()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.alg, self.occupied()))

    def __repr__(self):
        return "AutomatonState({alg} | {text})".format(alg=self.alg, text=self.text())

@dataclass
class EvolutionReport(object):
    state: AutomatonState
    energies: tuple
    e_bar: int
    energy: int
    carrier: object

def _slack(l):
    return default_config().runs.window_slack * l + 2

def ground_energy(alg, l, m):
    return R_general(alg, u(alg, l), u(alg, m))[2]

def carry(alg, carrier, cells):
    """Thread the carrier through the cells left to right: (new cells, carrier, H_j)."""
    out = []
    energies = []
    for cell in cells:
        new_cell, carrier, h = R_general(alg, carrier, cell)
        out.append(new_cell)
        energies.append(h)
    return out, carrier, energies

def evolve_Tl(state, l):
    if l < 1:
        raise ValueError("Carrier capacity must be positive, got {l}".format(l=l))
    alg = state.alg
    vacuum_carrier = u(alg, l)
    vacuum = u(alg, 1)
    slack = _slack(l)
    cells = list(state.cells)
    carrier = vacuum_carrier
    out = []
    energies = []
    baseline = 0
    j = 0
    while j < len(cells) or carrier != vacuum_carrier:
        if j == len(cells):
            if len(cells) - len(state.cells) >= slack:
                raise WindowOverflowError("Carrier u_{l} did not return within {slack} extra sites".format(l=l, slack=slack))
            cells.append(vacuum)
        new_cell, carrier, h = R_general(alg, carrier, cells[j])
        out.append(new_cell)
        energies.append(h)
        baseline += ground_energy(alg, l, cells[j].capacity)
        j += 1
    if len(out) > len(state.cells):
        logger.debug("T_%d extended the window of %s by %d sites", l, alg, len(out) - len(state.cells))
    while len(out) > len(state.cells) and out[-1] == vacuum:
        out.pop()
    new_state = AutomatonState(alg, out, state.anchor)
    return EvolutionReport(new_state, tuple(energies), -sum(energies), baseline - sum(energies), carrier)

def evolve_inverse_Tl(state, l):
    if l < 1:
        raise ValueError("Carrier capacity must be positive, got {l}".format(l=l))
    alg = state.alg
    vacuum_carrier = u(alg, l)
    vacuum = u(alg, 1)
    slack = _slack(l)
    carrier = vacuum_carrier
    anchor = state.anchor
    out = []
    added = 0
    j = len(state.cells) - 1
    while j >= 0 or carrier != vacuum_carrier:
        if j < 0:
            if added >= slack:
                raise WindowOverflowError("Carrier u_{l} did not return within {slack} extra sites".format(l=l, slack=slack))
            cell = vacuum
            anchor += 1
            added += 1
        else:
            cell = state.cells[j]
        carrier, new_cell, _ = R_general(alg, cell, carrier)
        out.append(new_cell)
        j -= 1
    out.reverse()
    while added and out[0] == vacuum:
        out.pop(0)
        anchor -= 1
        added -= 1
    return AutomatonState(alg, out, anchor)

def evolve_T(state):
    """T_l for growing l until two consecutive carriers give the same state."""
    previous = evolve_Tl(state, 1)
    for l in range(2, state.slots + 2):
        current = evolve_Tl(state, l)
        if current.state == previous.state:
            return current
        previous = current
    return previous

def conserved_E(state, l):
    if l == 0:
        return 0
    return evolve_Tl(state, l).energy

def energy_sequence(state, lmax=None):
    """E_0, E_1, ... up to lmax, or until E_l stops growing."""
    limit = state.slots + 1 if lmax is None else lmax
    energies = [0]
    for l in range(1, limit + 1):
        energies.append(conserved_E(state, l))
        if lmax is None and energies[l] == energies[l - 1]:
            break
    return energies

def soliton_spectrum(state):
    """Nonzero N_l = (-E_{l-1} + 2E_l - E_{l+1}) / varsigma."""
    varsigma = state.alg.varsigma
    energies = energy_sequence(state)
    energies.append(energies[-1])
    spectrum = {}
    for l in range(1, len(energies) - 1):
        count, remainder = divmod(-energies[l - 1] + 2 * energies[l] - energies[l + 1], varsigma)
        if remainder:
            raise SpectrumError("N_{l} is not an integer for {state}".format(l=l, state=state))
        if count < 0:
            raise SpectrumError("N_{l} = {count} is negative for {state}".format(l=l, count=count, state=state))
        if count:
            spectrum[l] = count
    return spectrum

def trace(state, l, steps, inverse=False):
    states = [state]
    for _ in range(steps):
        if inverse:
            states.append(evolve_inverse_Tl(states[-1], l))
        else:
            states.append(evolve_Tl(states[-1], l).state)
    return states

def evolve_inhomogeneous(state, r, steps):
    """T_r applied steps times to a lattice whose B_m sites, m > 1, all start at u_m."""
    for gamma, cell in state.phases():
        if cell.capacity > 1 and not is_vacuum(state.alg, cell):
            raise ExcitedSiteError("Site B_{m} at {gamma} is not u_{m} in {state}".format(m=cell.capacity, gamma=gamma, state=state))
    return trace(state, r, steps)[-1]

def parse_state(text, alg=None):
    """Parse `alg=C1:3 | 1 1 2b ...`, or a bare cell list when alg is given."""
    body = text.strip()
    if '|' in body:
        header, body = body.split('|', 1)
        header = header.strip()
        if not header.startswith('alg='):
            raise StateParseError("State header should be alg=<family>:<rank>, got {header}".format(header=header))
        alg = parse_algebra(header[len('alg='):].strip())
    if alg is None:
        raise StateParseError("No algebra given for state {text}".format(text=text.strip()))
    tokens = body.split()
    if not tokens:
        raise StateParseError("Empty state")
    try:
        cells = [parse_element(alg, token) for token in tokens]
    except ElementError as e:
        raise StateParseError(str(e))
    return AutomatonState(alg, cells)

def parse_state_file(path, alg=None):
    with open(path, "r") as f:
        lines = [line.strip() for line in f]
    return [parse_state(line, alg) for line in lines if line and not line.startswith('#')]
