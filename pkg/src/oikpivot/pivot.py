"""Generic labeled (optionally oriented) complementary pivoting.

A pivoting system exposes opaque states, an m-tuple representation of each
state over some node universe, a labeling of nodes into 1..m, and a pivot
operation that replaces one representation position and reports the
permutation relating the old and new representations.  Complementary
pivoting drops the position carrying a chosen missing label and then keeps
pivoting out the other copy of whatever label enters, until the missing
label reappears.

Positions are 1-based throughout, matching the usual written form of the
representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import permutation_parity


class WrongClass(ValueError):
    """State is not of the class (CL/ACL) the operation requires."""


class BadPosition(ValueError):
    pass


class NotCL(ValueError):
    pass


class StepLimitExceeded(RuntimeError):
    """Safety cap hit; indicates a non-reversible or miswired adapter."""


class PivotingSystem:
    """Adapter interface; subclasses supply the five components.

    ``pivot(state, pos)`` returns ``(new_state, pi)`` where ``pi`` is a
    1-based permutation tuple of length m: position j of the old
    representation (with the pivot position replaced by the entering node)
    holds the node found at position ``pi[j-1]`` of the new representation.
    Pivoting again at ``pi[pos-1]`` must restore the old state.
    """

    @property
    def m(self) -> int:
        raise NotImplementedError

    def representation(self, state) -> tuple:
        raise NotImplementedError

    def label(self, node) -> int:
        raise NotImplementedError

    def pivot(self, state, pos: int):
        raise NotImplementedError

    @property
    def oriented(self) -> bool:
        return False

    def orientation(self, state) -> int:
        raise NotImplementedError("system is not oriented")

    def state_count(self) -> int | None:
        """Number of states if known; used to size the step cap."""
        return None

    def state_label(self, state) -> str:
        return repr(state)


@dataclass(frozen=True)
class StateClass:
    kind: str  # "cl" | "acl" | "other"
    missing: int | None = None
    positions: tuple[int, int] | None = None

    @property
    def is_cl(self) -> bool:
        return self.kind == "cl"

    @property
    def is_acl(self) -> bool:
        return self.kind == "acl"


@dataclass(frozen=True)
class PathStep:
    state: object
    drop_pos: int
    pi: tuple[int, ...]
    sigma: int | None


@dataclass
class PathResult:
    end: object
    steps: int
    start_sign: int | None
    end_sign: int | None
    trace: tuple[PathStep, ...] | None = None


def _labels(system: PivotingSystem, state) -> list[int]:
    return [system.label(v) for v in system.representation(state)]


def classify(system: PivotingSystem, state) -> StateClass:
    """Completely labeled, almost completely labeled, or neither."""
    m = system.m
    labels = _labels(system, state)
    counts = [0] * (m + 1)
    for l in labels:
        if not 1 <= l <= m:
            return StateClass("other")
        counts[l] += 1
    missing = [l for l in range(1, m + 1) if counts[l] == 0]
    doubled = [l for l in range(1, m + 1) if counts[l] == 2]
    if not missing:
        return StateClass("cl")
    if len(missing) == 1 and len(doubled) == 1 and max(counts[1:]) == 2:
        dup = doubled[0]
        positions = tuple(i + 1 for i, l in enumerate(labels) if l == dup)
        return StateClass("acl", missing=missing[0], positions=positions)
    return StateClass("other")


def state_sign(system: PivotingSystem, state, pos: int | None = None) -> int:
    """Sign of a CL state, or one of the two opposite signs of an ACL state.

    CL: orientation times parity of the label sequence.  ACL: same after
    substituting the missing label at the chosen duplicate position; the
    two duplicate positions give opposite signs.
    """
    cls = classify(system, state)
    sigma = system.orientation(state)
    labels = _labels(system, state)
    if cls.is_cl:
        if pos is not None:
            raise BadPosition("CL states take no position argument")
        return sigma * permutation_parity(labels)
    if cls.is_acl:
        if pos is None or pos not in cls.positions:
            raise BadPosition(f"position must be one of {cls.positions}")
        labels[pos - 1] = cls.missing
        return sigma * permutation_parity(labels)
    raise WrongClass("state is neither CL nor ACL")


def follow_path(
    system: PivotingSystem,
    start,
    missing_label: int,
    step_cap: int | None = None,
    record_trace: bool = False,
) -> PathResult:
    """Run complementary pivoting from a CL state until another CL state.

    On oriented systems every pivot is checked against the orientation
    switching rule and the endpoint signs are verified opposite.
    """
    m = system.m
    cls = classify(system, start)
    if not cls.is_cl:
        raise NotCL("follow_path must start at a completely labeled state")
    if step_cap is None:
        count = system.state_count()
        step_cap = count * m if count is not None else 10**7
    oriented = system.oriented
    start_sign = state_sign(system, start) if oriented else None

    labels = _labels(system, start)
    pos = labels.index(missing_label) + 1
    state = start
    steps = 0
    trace: list[PathStep] = []
    while True:
        new_state, pi = system.pivot(state, pos)
        steps += 1
        if steps > step_cap:
            raise StepLimitExceeded(f"no CL state within {step_cap} pivots")
        if oriented:
            # orientation switching rule; a failure means a broken adapter
            if system.orientation(new_state) != -system.orientation(state) * permutation_parity(pi):
                raise WrongClass("adapter violates the orientation switching rule")
        if record_trace:
            trace.append(PathStep(new_state, pos, pi, system.orientation(new_state) if oriented else None))
        entered = pi[pos - 1]
        new_labels = _labels(system, new_state)
        entered_label = new_labels[entered - 1]
        if entered_label == missing_label:
            state = new_state
            break
        candidates = [j + 1 for j, l in enumerate(new_labels) if l == entered_label and j + 1 != entered]
        if len(candidates) != 1:
            raise WrongClass(f"expected exactly one duplicate of label {entered_label}")
        state, pos = new_state, candidates[0]
    end_sign = state_sign(system, state) if oriented else None
    if oriented and end_sign != -start_sign:
        raise WrongClass("path endpoints do not have opposite sign")
    return PathResult(
        end=state,
        steps=steps,
        start_sign=start_sign,
        end_sign=end_sign,
        trace=tuple(trace) if record_trace else None,
    )


def pair_all_cl_states(system: PivotingSystem, missing_label: int, cl_states) -> list[tuple]:
    """Partition the given CL states into path-connected pairs.

    The caller supplies the complete CL set (for example by brute-force
    enumeration); each state is the endpoint of exactly one path.
    """
    cl_states = list(cl_states)
    universe = set(cl_states)
    seen = set()
    pairs = []
    for s in cl_states:
        if s in seen:
            continue
        result = follow_path(system, s, missing_label)
        if result.end not in universe:
            raise WrongClass(f"path ended outside the supplied CL set: {system.state_label(result.end)}")
        if result.end in seen or result.end == s:
            raise WrongClass("paths do not pair the CL states")
        seen.add(s)
        seen.add(result.end)
        pairs.append((s, result.end))
    if system.oriented:
        signs = [state_sign(system, s) for s in cl_states]
        if signs.count(1) != signs.count(-1):
            raise WrongClass("CL states do not split evenly by sign")
    return pairs
