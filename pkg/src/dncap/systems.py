"""Channel models: weighted symbols, branch systems, and weighted FSMs.

A discrete noiseless channel accepts some set of weighted-symbol strings and
rejects everything else.  We model the accepted strings as root paths of a
(usually infinite) tree: every node expands into a finite, nonempty set of
branches, each branch carries a symbol with a strictly positive weight, and
path weights add along branches.  Regular constraints come from finite-state
machines; non-regular ones from arbitrary generator functions over opaque
node handles.

Weights given as ints, strings ("3/10" or "0.3"), or Fractions are kept as
exact rationals so that enumeration can bucket equal weights exactly.  Floats
are kept as floats and are accepted by the analytic routines only.
"""

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import InvalidSystemError

Weight = Fraction | float
Branches = tuple[tuple["Symbol", Hashable], ...]

MEMORYLESS = "memoryless"
FSM = "fsm"
GENERATOR = "generator"


def parse_weight(value) -> Weight:
    """Coerce a weight to an exact Fraction, or pass a float through as-is.

    Decimal strings are scaled to exact rationals ("0.3" -> 3/10), so spec
    files never suffer a silent float round trip.
    """
    if isinstance(value, bool):
        raise TypeError("weight must be numeric, not bool")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a valid rational weight: {value!r}") from exc
    if isinstance(value, float):
        return value
    raise TypeError(f"unsupported weight type: {type(value).__name__}")


def is_exact(weight: Weight) -> bool:
    return isinstance(weight, (Fraction, int))


@dataclass(frozen=True)
class Symbol:
    """A channel symbol: a nonempty label and a strictly positive weight."""

    label: str
    weight: Weight

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise InvalidSystemError("symbol label must be a nonempty string")
        object.__setattr__(self, "weight", parse_weight(self.weight))
        if not self.weight > 0:
            raise InvalidSystemError(
                f"symbol {self.label!r}: weight must be > 0, got {self.weight}"
            )


def symbols(spec: Mapping[str, object]) -> tuple[Symbol, ...]:
    """Build an alphabet from a {label: weight} mapping."""
    return tuple(Symbol(label, w) for label, w in spec.items())


@dataclass(frozen=True, eq=False)
class BranchSystem:
    """Tree view of a channel: a root handle plus a pure expansion function.

    ``expand`` maps a node handle to the finite, nonempty tuple of
    ``(Symbol, child_handle)`` branches leaving that node.  Handles are opaque
    and owned by the system (state indices for FSMs, encoded prefix state for
    generators), so no tree is ever materialized.  Instances are immutable and
    ``expand`` must be a pure function of its handle, which makes concurrent
    read access safe.
    """

    kind: str
    root: Hashable
    expand: Callable[[Hashable], Branches]
    alphabet: tuple[Symbol, ...] | None = None
    fsm: "WeightedFsm | None" = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in (MEMORYLESS, FSM, GENERATOR):
            raise InvalidSystemError(f"unknown system kind: {self.kind!r}")

    def describe(self) -> str:
        return self.name or self.kind


@dataclass(frozen=True, eq=False)
class WeightedFsm:
    """A finite-state machine with weighted, deterministically labeled edges.

    Invariants enforced at construction: every state has at least one
    outgoing transition (no dead ends -- a dead end would break Markov
    generability and is treated as a modeling bug, not silently pruned),
    all states are reachable from ``start``, and the labels leaving any one
    state are pairwise distinct.
    """

    num_states: int
    start: int
    transitions: tuple[tuple[int, Symbol, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(
            (src, sym if isinstance(sym, Symbol) else Symbol(*sym), dst)
            for src, sym, dst in self.transitions
        ))
        if self.num_states < 1:
            raise InvalidSystemError("an FSM needs at least one state")
        if not 0 <= self.start < self.num_states:
            raise InvalidSystemError(f"start state {self.start} out of range")
        outgoing: dict[int, list] = {i: [] for i in range(self.num_states)}
        for src, sym, dst in self.transitions:
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise InvalidSystemError(f"transition ({src} -> {dst}) out of range")
            outgoing[src].append((sym, dst))
        for state, outs in outgoing.items():
            if not outs:
                raise InvalidSystemError(
                    f"state {state} is a dead end (every state needs a successor)"
                )
            labels = [sym.label for sym, _ in outs]
            if len(set(labels)) != len(labels):
                raise InvalidSystemError(
                    f"state {state} has duplicate outgoing labels"
                )
        reached = {self.start}
        frontier = [self.start]
        while frontier:
            state = frontier.pop()
            for _, dst in outgoing[state]:
                if dst not in reached:
                    reached.add(dst)
                    frontier.append(dst)
        if len(reached) != self.num_states:
            missing = sorted(set(range(self.num_states)) - reached)
            raise InvalidSystemError(
                f"states {missing} unreachable from start (prune them first)"
            )

    @functools.cached_property
    def outgoing(self) -> dict[int, Branches]:
        table: dict[int, list] = {i: [] for i in range(self.num_states)}
        for src, sym, dst in self.transitions:
            table[src].append((sym, dst))
        return {state: tuple(outs) for state, outs in table.items()}

    def accepts(self, labels: Iterable[str]) -> bool:
        """Walk the label sequence from the start state; labels are atomic."""
        state = self.start
        for label in labels:
            for sym, dst in self.outgoing[state]:
                if sym.label == label:
                    state = dst
                    break
            else:
                return False
        return True

    def is_strongly_connected(self) -> bool:
        forward: dict[int, set] = {i: set() for i in range(self.num_states)}
        backward: dict[int, set] = {i: set() for i in range(self.num_states)}
        for src, _, dst in self.transitions:
            forward[src].add(dst)
            backward[dst].add(src)

        def closure(adj):
            seen = {0}
            stack = [0]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            return len(seen) == self.num_states

        return closure(forward) and closure(backward)


def fsm_to_branch_system(fsm: WeightedFsm, name: str = "") -> BranchSystem:
    """View an FSM as a branch system whose handles are state indices.

    Depth-l paths of the result are exactly the FSM's length-l transition
    sequences from the start state.
    """
    table = fsm.outgoing
    return BranchSystem(
        kind=FSM, root=fsm.start, expand=table.__getitem__,
        fsm=fsm, name=name or f"fsm[{fsm.num_states}]",
    )


def memoryless_fsm(alphabet: Sequence[Symbol]) -> WeightedFsm:
    """The one-state FSM with a self-loop per symbol."""
    alphabet = _checked_alphabet(alphabet)
    return WeightedFsm(1, 0, tuple((0, sym, 0) for sym in alphabet))


def _checked_alphabet(alphabet: Sequence[Symbol]) -> tuple[Symbol, ...]:
    alphabet = tuple(alphabet)
    if not alphabet:
        raise InvalidSystemError("alphabet must be nonempty")
    labels = [sym.label for sym in alphabet]
    if len(set(labels)) != len(labels):
        raise InvalidSystemError("alphabet labels must be distinct")
    return alphabet


def make_memoryless(alphabet: Sequence[Symbol], name: str = "") -> BranchSystem:
    """An unconstrained channel: depth-l support is every l-tuple of symbols."""
    alphabet = _checked_alphabet(alphabet)
    branches = tuple((sym, 0) for sym in alphabet)

    def expand(_handle):
        return branches

    label = name or "memoryless{%s}" % ",".join(
        f"{s.label}:{s.weight}" for s in alphabet
    )
    return BranchSystem(
        kind=MEMORYLESS, root=0, expand=expand, alphabet=alphabet, name=label,
    )


_OPEN = Symbol("(", 1)
_CLOSE = Symbol(")", 1)


def _dyck_expand(balance: int) -> Branches:
    if balance == 0:
        return ((_OPEN, 1),)
    return ((_OPEN, balance + 1), (_CLOSE, balance - 1))


def make_dyck_prefix() -> BranchSystem:
    """Balanced-prefix channel over "(" and ")", both of weight 1.

    Accepted strings are exactly those whose every prefix has a nonnegative
    running balance.  The node handle is the current balance, so the state
    space is unbounded and the constraint is not regular.
    """
    return BranchSystem(
        kind=GENERATOR, root=0, expand=_dyck_expand, name="dyck_prefix",
    )


def make_rll(d: int, k: int) -> WeightedFsm:
    """Run-length-limited binary channel on the standard (k+1)-state graph.

    State i means "i zeros seen in the current run"; "0" advances i while
    i < k and "1" resets to state 0 when i >= d.  The start state is 0, i.e.
    the sequence begins as if a one had just been emitted, so the leading
    zero run obeys the same [d, k] bound as every interior run.  Unit weights.
    """
    if not (isinstance(d, int) and isinstance(k, int)):
        raise InvalidSystemError("run-length bounds must be integers")
    if not 0 <= d < k:
        raise InvalidSystemError(f"need 0 <= d < k, got d={d}, k={k}")
    zero = Symbol("0", 1)
    one = Symbol("1", 1)
    transitions = []
    for i in range(k + 1):
        if i < k:
            transitions.append((i, zero, i + 1))
        if i >= d:
            transitions.append((i, one, 0))
    return WeightedFsm(k + 1, 0, tuple(transitions))


def make_golden_mean() -> WeightedFsm:
    """Binary channel forbidding "11" (two ones in a row), unit weights."""
    zero = Symbol("0", 1)
    one = Symbol("1", 1)
    return WeightedFsm(2, 0, ((0, zero, 0), (0, one, 1), (1, zero, 0)))


def check_label_uniqueness(system: BranchSystem, depth: int = 8) -> None:
    """Exhaustively verify label discipline down to ``depth`` branches.

    Checks that the labels leaving any reachable node are pairwise distinct
    and that no two distinct root paths carry the same label tuple.  The walk
    is exponential in ``depth``; 8 is a debugging default, not a proof.
    """
    seen_paths: set[tuple[str, ...]] = set()
    frontier: list[tuple[Hashable, tuple[str, ...]]] = [(system.root, ())]
    for _ in range(depth):
        next_frontier = []
        for handle, path in frontier:
            branches = system.expand(handle)
            if not branches:
                raise InvalidSystemError(
                    f"node {handle!r} has an empty expansion"
                )
            labels = [sym.label for sym, _ in branches]
            if len(set(labels)) != len(labels):
                raise InvalidSystemError(
                    f"node {handle!r} has duplicate branch labels: {labels}"
                )
            for sym, child in branches:
                extended = path + (sym.label,)
                if extended in seen_paths:
                    raise InvalidSystemError(
                        f"two distinct root paths share the labels {extended}"
                    )
                seen_paths.add(extended)
                next_frontier.append((child, extended))
        frontier = next_frontier
