"""Discrete-event simulation core.

A simulation is a single logical thread: events are resolved strictly in
(due-time, insertion-order) order and handlers mutate the world state.
Randomness comes from per-process generator streams spawned from one master
seed, so results are bit-reproducible regardless of how link processes
interleave in the queue.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .errors import SimulationStallError
from .quantum import BellDiagonalState, dephase


@dataclass(frozen=True)
class SimEvent:
    """One scheduled action; payload layout is protocol-defined."""

    time_s: float
    seq: int
    kind: str
    payload: tuple


class EventQueue:
    """Time-ordered queue with FIFO resolution of simultaneous events."""

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, SimEvent]] = []
        self._counter = itertools.count()

    def __len__(self) -> int:
        return len(self._heap)

    def schedule(self, time_s: float, kind: str, payload: tuple = ()) -> SimEvent:
        event = SimEvent(time_s, next(self._counter), kind, payload)
        heapq.heappush(self._heap, (time_s, event.seq, event))
        return event

    def pop(self) -> SimEvent:
        if not self._heap:
            raise SimulationStallError("event queue is empty")
        return heapq.heappop(self._heap)[2]


class SampleRecord(NamedTuple):
    """One delivered end-to-end pair."""

    time_s: float
    state: BellDiagonalState


@dataclass
class StoredQubit:
    """Half of an entangled pair sitting in a memory mode.

    ``stored_time`` starts the dephasing clock, ``eligible_time`` is when the
    local station has the heralding/confirmation needed to act on the qubit,
    and ``last_update`` tracks up to when dephasing has been folded into the
    pair state.
    """

    node: int
    dephasing_time_s: float
    stored_time: float
    eligible_time: float
    last_update: float = field(init=False)
    eligible: bool = False
    alive: bool = True
    pair: "Pair | None" = None
    tag: tuple = ()

    def __post_init__(self) -> None:
        self.last_update = self.stored_time


NOT_KNOWN = -math.inf


@dataclass
class Pair:
    """An entangled pair between two endpoints.

    Endpoints are StoredQubit instances for memory-held qubits or None for
    qubits already measured at a ground station.  ``known_left``/``known_right``
    track when each end station of the full chain could classically know
    about this pair (used for completion-time bookkeeping).
    """

    state: BellDiagonalState
    left: StoredQubit | None
    right: StoredQubit | None
    confirmed_time: float
    known_left: float = NOT_KNOWN
    known_right: float = NOT_KNOWN
    alive: bool = True

    def qubits(self) -> Iterable[StoredQubit]:
        if self.left is not None:
            yield self.left
        if self.right is not None:
            yield self.right


def lazy_update(pair: Pair, now: float) -> None:
    """Fold the dephasing accumulated since each qubit's last update into the
    pair state.

    Qubits measured on arrival at ground stations carry no memory and hence
    no entry here.  Relies on dephasing composing additively in time, so any
    update schedule yields the same final state.
    """
    for qubit in pair.qubits():
        if now < qubit.last_update:
            raise ValueError("time regression in lazy update")
        if now > qubit.last_update:
            pair.state = dephase(
                pair.state, now - qubit.last_update, qubit.dephasing_time_s
            )
            qubit.last_update = now


def sample_geometric(p: float, rng: np.random.Generator) -> int:
    """Number of sequential trials until the first success."""
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must lie in (0, 1]")
    if p == 1.0:
        return 1
    return int(rng.geometric(p))


class World:
    """Clock, event queue and sample sink shared by protocol handlers."""

    def __init__(self, master_seed, eager_updates: bool = False) -> None:
        self.clock = 0.0
        self.queue = EventQueue()
        self.records: list[SampleRecord] = []
        self.seed_sequence = np.random.SeedSequence(master_seed)
        self.eager_updates = eager_updates

    def spawn_streams(self, count: int) -> list[np.random.Generator]:
        """Independent generators, one per link process."""
        return [np.random.default_rng(s) for s in self.seed_sequence.spawn(count)]

    def resolve_next(self) -> SimEvent:
        event = self.queue.pop()
        if event.time_s < self.clock:
            raise SimulationStallError("event scheduled before current clock")
        self.clock = event.time_s
        return event

    def emit(self, record: SampleRecord) -> None:
        self.records.append(record)


class Protocol:
    """Interface protocols implement on top of the engine."""

    def bootstrap(self, world: World) -> None:
        raise NotImplementedError

    def handle(self, world: World, event: SimEvent) -> None:
        raise NotImplementedError

    def live_pairs(self) -> Iterable[Pair]:
        return ()


def run(
    protocol: Protocol,
    target_samples: int,
    master_seed,
    eager_updates: bool = False,
    progress: Callable[[int], None] | None = None,
) -> list[SampleRecord]:
    """Resolve events until the requested number of end-to-end samples exists.

    Deterministic: identical (seed, protocol configuration) produce identical
    record lists.  ``eager_updates`` is a debugging mode that materializes
    dephasing on every live pair after each event; it must not change any
    delivered state.
    """
    world = World(master_seed, eager_updates=eager_updates)
    if target_samples <= 0:
        return []
    protocol.bootstrap(world)
    while len(world.records) < target_samples:
        event = world.resolve_next()
        protocol.handle(world, event)
        if world.eager_updates:
            for pair in protocol.live_pairs():
                if pair.alive:
                    lazy_update(pair, world.clock)
        if progress is not None:
            progress(len(world.records))
    world.records.sort(key=lambda record: record.time_s)
    return world.records[:target_samples]
