"""Interactive game sessions: steppers for every strategy plus an in-memory store.

A session realizes the two-player protocol: the caller holds a secret element,
the chosen strategy asks subset questions one at a time, and the caller
answers yes or no.  Tree-built strategies (at, vector, huffman) replay a
precomputed tree; cone and the randomized strategy run their native steppers.

The store is a TTL-evicted in-memory map.  Restarting the process forgets all
sessions; nothing else is held server-side.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Protocol

from .core import (
    DecisionTree,
    Distribution,
    Internal,
    Leaf,
    Node,
    Question,
    TranscriptEntry,
    entropy,
)
from .errors import BadStrategy, PreconditionViolated, UnknownSession, WrongState
from .huffman import huffman
from .strategy_at import DEFAULT_THRESHOLD, AtParams, build_at_tree
from .strategy_cone import cone_online
from .strategy_prolixity import ProlixityParams, prolixity_online
from .strategy_vector import build_vector_tree

__all__ = [
    "Stepper",
    "TreeStepper",
    "GameSession",
    "SessionStore",
    "STRATEGY_CATALOG",
    "make_stepper",
    "session_create",
    "session_answer",
]


class Stepper(Protocol):
    """What a playable strategy exposes: one pending question at a time."""

    n: int
    asked: int

    @property
    def done(self) -> bool: ...

    @property
    def result(self) -> Optional[int]: ...

    def question(self) -> Question: ...

    def answer(self, yes: bool) -> None: ...

    def candidates(self) -> tuple[int, ...]: ...


class TreeStepper:
    """Plays a fixed decision tree by walking from the root."""

    def __init__(self, tree: DecisionTree):
        self.n = tree.n
        self.asked = 0
        self._node: Node = tree.root

    @property
    def done(self) -> bool:
        return isinstance(self._node, Leaf)

    @property
    def result(self) -> Optional[int]:
        return self._node.element if isinstance(self._node, Leaf) else None

    def question(self) -> Question:
        if isinstance(self._node, Leaf):
            raise WrongState("the game is over; no further questions")
        return self._node.question

    def answer(self, yes: bool) -> None:
        if isinstance(self._node, Leaf):
            raise WrongState("the game is over; cannot accept answers")
        self._node = self._node.yes if yes else self._node.no
        self.asked += 1

    def candidates(self) -> tuple[int, ...]:
        out: list[int] = []
        stack: list[Node] = [self._node]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.append(node.element)
            else:
                assert isinstance(node, Internal)
                stack.extend((node.yes, node.no))
        return tuple(sorted(out))


STRATEGY_CATALOG: tuple[dict, ...] = (
    {
        "kind": "at",
        "params": {"t": "threshold in (0, 1] as a rational string, default 3/10"},
        "description": "threshold strategy over comparisons and equalities; "
        "cost at most H+1 at the default threshold",
    },
    {
        "kind": "vector",
        "params": {"r": "integer redundancy budget, default 2"},
        "description": "digit-by-digit strategy; cost at most H+r from a family "
        "of roughly 2r*n^(1/r) questions",
    },
    {
        "kind": "cone",
        "params": {},
        "description": "halving over subsets and supersets of a pivot block; "
        "cost exactly Opt",
    },
    {
        "kind": "prolixity",
        "params": {
            "k": "heaviness exponent, integer >= 3, default 3",
            "seed": "integer rng seed, default 0",
        },
        "description": "randomized doubling strategy; expected cost at most "
        "Opt + 4/2^k + (4/2^k)^2",
    },
    {
        "kind": "huffman",
        "params": {},
        "description": "play the optimal tree itself; questions are explicit subsets",
    },
)


def make_stepper(dist: Distribution, strategy: Mapping) -> tuple[str, Stepper]:
    """Build a stepper from a strategy descriptor {kind, ...params}.

    Raises BadStrategy on unknown kinds or parameters the strategy rejects.
    """
    if not isinstance(strategy, Mapping):
        raise BadStrategy("strategy must be an object with a 'kind' field")
    kind = strategy.get("kind")
    try:
        if kind == "at":
            t = Fraction(str(strategy.get("t", DEFAULT_THRESHOLD)))
            return f"at(t={t})", TreeStepper(build_at_tree(dist, AtParams(t)))
        if kind == "vector":
            r = int(strategy.get("r", 2))
            return f"vector(r={r})", TreeStepper(build_vector_tree(dist, r))
        if kind == "cone":
            return "cone", cone_online(dist)
        if kind == "prolixity":
            params = ProlixityParams(
                k=int(strategy.get("k", 3)),
                rng_seed=int(strategy.get("seed", 0)),
            )
            return f"prolixity(k={params.k})", prolixity_online(dist, params)
        if kind == "huffman":
            return "huffman", TreeStepper(huffman(dist).tree)
    except (PreconditionViolated, ValueError, ZeroDivisionError, TypeError) as exc:
        raise BadStrategy(f"cannot run {kind!r} here: {exc}") from exc
    raise BadStrategy(f"unknown strategy kind {kind!r}")


@dataclass
class GameSession:
    """One live game: a distribution, a stepper, and the transcript so far.

    Entropy and the optimal cost are computed once at creation; clients use
    them as gauges next to the running question count.
    """

    id: str
    dist: Distribution
    strategy: str
    stepper: Stepper
    entries: list[TranscriptEntry]
    touched: float
    entropy_bits: float
    opt_cost: Fraction
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def status(self) -> str:
        return "done" if self.stepper.done else "awaiting-answer"


class SessionStore:
    """In-memory session map; sessions idle longer than the TTL are evicted."""

    def __init__(self, ttl: float = 3600.0, clock: Callable[[], float] = time.monotonic):
        self.ttl = ttl
        self._clock = clock
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    def now(self) -> float:
        return self._clock()

    def _evict(self, now: float) -> None:
        stale = [sid for sid, s in self._sessions.items() if now - s.touched > self.ttl]
        for sid in stale:
            del self._sessions[sid]

    def put(self, session: GameSession) -> None:
        with self._lock:
            self._evict(self._clock())
            self._sessions[session.id] = session

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            now = self._clock()
            self._evict(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSession(f"no session {session_id!r}")
            session.touched = now
            return session

    def __len__(self) -> int:
        with self._lock:
            self._evict(self._clock())
            return len(self._sessions)


def session_create(
    store: SessionStore, dist: Distribution, strategy: Mapping
) -> GameSession:
    """Start a game; the session is immediately done on a point mass."""
    label, stepper = make_stepper(dist, strategy)
    session = GameSession(
        id=secrets.token_hex(16),
        dist=dist,
        strategy=label,
        stepper=stepper,
        entries=[],
        touched=store.now(),
        entropy_bits=entropy(dist),
        opt_cost=huffman(dist).opt_cost,
    )
    store.put(session)
    return session


def session_answer(
    store: SessionStore, session_id: str, answer: bool
) -> GameSession:
    """Feed one answer to a session; returns the session with its next state.

    Raises UnknownSession for evicted or never-created ids, WrongState when
    the game is already over, and lets InconsistentAnswers from the stepper
    propagate (the transcript is unchanged in that case).
    """
    session = store.get(session_id)
    with session.lock:
        if session.stepper.done:
            raise WrongState("the game is over; cannot accept answers")
        question = session.stepper.question()
        session.stepper.answer(answer)
        session.entries.append(TranscriptEntry(question, answer))
    return session
