"""Robustification schemes: interpolate any explorer with nearest neighbor.

Both schemes run the wrapped explorer inside a cost-free simulated world (it
is shown revelations but never moves physically) and spend real traversal
budget alternating between nearest-neighbor phases and detours to the wrapped
explorer's chosen targets. The basic scheme budgets each NN phase against the
path to the next such target; the modified scheme additionally lets the
wrapped explorer run ahead while its cumulative cost stays a lambda-fraction
of what NN phases have already paid.
"""

from dataclasses import dataclass
from fractions import Fraction

from .explorers import Stuck, nn_next
from .graphs import ExplorationState, GraphError, shortest_path


@dataclass(frozen=True)
class RobustifyConfig:
    lam: Fraction
    variant: str = "basic"

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise GraphError("lambda must be positive")
        if self.variant not in ("basic", "modified"):
            raise GraphError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class IterationCosts:
    """One outer iteration: NN-phase cost, cost spent chasing the wrapped
    explorer's targets, and the shortest-path estimate the NN budget was
    computed from."""

    nn_cost: int
    chase_cost: int
    path_cost: int


@dataclass(frozen=True)
class CostBreakdown:
    iterations: tuple
    return_cost: int
    total: int
    nn_total: int
    chase_total: int


class BlackboxView:
    """The wrapped explorer's simulated world.

    known_world holds exactly the revelations of vertices the wrapped
    explorer has virtually visited; the scheme feeds it explored vertices
    without executing any traversal.
    """

    def __init__(self, explorer, instance):
        self.explorer = explorer
        self.sim_state = ExplorationState(instance)

    @property
    def known_world(self):
        return self.sim_state.known

    def next_unexplored(self, real_state):
        """Advance the wrapped explorer past vertices the scheme already
        explored (revealing them to it) and return its first target
        unexplored in reality."""
        while True:
            u = self.explorer.next_target(self.sim_state)
            if u in self.sim_state.explored or u not in self.sim_state.known:
                raise Stuck(f"wrapped explorer chose unreachable vertex {u}")
            if u not in real_state.explored:
                return u
            self.advance_to(u)

    def advance_to(self, u):
        self.sim_state.position = u
        self.sim_state.reveal(u)


def _go(state, target):
    path, cost = shortest_path(state.known, state.position, target)
    state.traverse(path)
    return cost


def _finish(state, instance, iterations, nn_total, chase_total):
    return_cost = _go(state, instance.start)
    breakdown = CostBreakdown(
        tuple(iterations), return_cost, state.total_cost, nn_total, chase_total
    )
    return state.total_cost, breakdown


def run_basic(explorer, instance, lam):
    """Basic scheme: per target, an NN phase with budget lambda times the
    known shortest-path cost to the target, then a detour to the target."""
    lam = Fraction(lam)
    if lam <= 0:
        raise GraphError("lambda must be positive")
    state = ExplorationState(instance)
    view = BlackboxView(explorer, instance)
    iterations = []
    nn_total = 0
    chase_total = 0
    while not state.fully_explored:
        u = view.next_unexplored(state)
        _, path_cost = shortest_path(state.known, state.position, u)
        spent = 0
        while spent < lam * path_cost and state.position != u:
            spent += _go(state, nn_next(state))
        chase = _go(state, u)
        view.advance_to(u)
        iterations.append(IterationCosts(spent, chase, path_cost))
        nn_total += spent
        chase_total += chase
    return _finish(state, instance, iterations, nn_total, chase_total)


def run_modified(explorer, instance, lam):
    """Modified scheme: the wrapped explorer runs ahead while its cumulative
    cost stays within the banked NN total divided by lambda; NN phases bank
    budget across iterations and retarget when they swallow the current
    goal."""
    lam = Fraction(lam)
    if lam <= 0:
        raise GraphError("lambda must be positive")
    state = ExplorationState(instance)
    view = BlackboxView(explorer, instance)
    iterations = []
    nn_total = 0
    chase_total = 0
    while not state.fully_explored:
        u = view.next_unexplored(state)
        _, path_cost = shortest_path(state.known, state.position, u)
        chase = 0
        while chase_total + path_cost <= nn_total / lam:
            leg = _go(state, u)
            chase += leg
            chase_total += leg
            view.advance_to(u)
            if state.fully_explored:
                return _finish(
                    state,
                    instance,
                    iterations + [IterationCosts(0, chase, path_cost)],
                    nn_total,
                    chase_total,
                )
            u = view.next_unexplored(state)
            _, path_cost = shortest_path(state.known, state.position, u)
        spent = 0
        while True:
            if state.position == u:
                if not spent < lam * chase_total:
                    break
                if state.fully_explored:
                    break
                u = view.next_unexplored(state)
                _, path_cost = shortest_path(state.known, state.position, u)
            elif not spent < lam * (chase_total + path_cost):
                break
            spent += _go(state, nn_next(state))
        nn_total += spent
        leg = _go(state, u)
        chase += leg
        chase_total += leg
        view.advance_to(u)
        iterations.append(IterationCosts(spent, chase, path_cost))
    return _finish(state, instance, iterations, nn_total, chase_total)


def run_scheme(explorer, instance, config):
    if config.variant == "basic":
        return run_basic(explorer, instance, config.lam)
    return run_modified(explorer, instance, config.lam)
