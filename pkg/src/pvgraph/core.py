"""Periodically varying graphs: carriers on fixed cyclic routes.

A system is a set of carriers, each looping forever over its own periodic
route of sites. The directed edge (route[i], route[i+1]) exists only at the
instants the carrier traverses it, so reachability is a question about
timing, not just topology. Two carriers standing on the same site at the
same instant form a meeting point; the meeting graph collects those pairs.

Everything here is an immutable value; validators and derived views never
mutate their inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

import numpy as np

from .errors import InconsistentWalk, PeriodProductTooLarge, UnreachableSite

if TYPE_CHECKING:  # pragma: no cover
    from .engine import Trace

#: Pairwise meeting scans refuse to enumerate more phases than this.
DEFAULT_LCM_CAP = 2**32

ANONYMOUS = "anonymous"
IDS = "ids"


@dataclass(frozen=True)
class Route:
    """An ordered cycle of sites; index i is the site occupied at phase i."""

    sites: tuple[str, ...]

    def __post_init__(self):
        if not self.sites:
            raise ValueError("route must contain at least one site")
        object.__setattr__(self, "sites", tuple(self.sites))

    @property
    def period(self) -> int:
        return len(self.sites)

    @cached_property
    def domain(self) -> frozenset[str]:
        return frozenset(self.sites)

    def at(self, t: int) -> str:
        """Site occupied at time t (t may exceed the period)."""
        return self.sites[t % len(self.sites)]


@dataclass(frozen=True)
class Carrier:
    id: str
    route: Route


@dataclass(frozen=True)
class TimedEdge:
    """One move: `carrier` leaves `from_site` at `time`, arriving at `to_site`."""

    time: int
    carrier: str
    from_site: str
    to_site: str


@dataclass(frozen=True)
class RouteSet:
    """The full system: k carriers over a site universe, plus the identity mode.

    `sites` fixes the universe and its canonical order. Omit it to default to
    the sites in first-appearance order across the routes. A declared site
    that no route ever visits is rejected (UnreachableSite): no walk could
    reach it.
    """

    carriers: tuple[Carrier, ...]
    mode: str = IDS
    sites: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "carriers", tuple(self.carriers))
        if not self.carriers:
            raise ValueError("need at least one carrier")
        if self.mode not in (ANONYMOUS, IDS):
            raise ValueError(f"unknown mode {self.mode!r}")
        ids = [c.id for c in self.carriers]
        if len(set(ids)) != len(ids):
            raise ValueError("carrier ids must be unique")
        seen: dict[str, None] = {}
        for c in self.carriers:
            for s in c.route.sites:
                seen.setdefault(s)
        if not self.sites:
            object.__setattr__(self, "sites", tuple(seen))
        else:
            object.__setattr__(self, "sites", tuple(self.sites))
            if len(set(self.sites)) != len(self.sites):
                raise ValueError("site universe contains duplicates")
            extra = [s for s in seen if s not in set(self.sites)]
            if extra:
                raise ValueError(f"route sites missing from declared universe: {extra}")
            dead = [s for s in self.sites if s not in seen]
            if dead:
                raise UnreachableSite(f"site(s) on no route: {', '.join(dead)}")

    @classmethod
    def from_routes(
        cls,
        routes: Mapping[str, Sequence[str]] | Iterable[tuple[str, Sequence[str]]],
        mode: str = IDS,
        sites: Sequence[str] = (),
    ) -> "RouteSet":
        items = routes.items() if isinstance(routes, Mapping) else routes
        carriers = tuple(Carrier(cid, Route(tuple(r))) for cid, r in items)
        return cls(carriers, mode, tuple(sites))

    @property
    def k(self) -> int:
        return len(self.carriers)

    @property
    def n(self) -> int:
        return len(self.sites)

    @cached_property
    def max_period(self) -> int:
        return max(c.route.period for c in self.carriers)

    @cached_property
    def site_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.sites)}

    @cached_property
    def by_id(self) -> dict[str, Carrier]:
        return {c.id: c for c in self.carriers}

    def carrier(self, cid: str) -> Carrier:
        return self.by_id[cid]


def position(carrier: Carrier, t: int) -> str:
    """Where the carrier stands at time t ≥ 0."""
    return carrier.route.at(t)


def carriers_at(routeset: RouteSet, t: int, x: str) -> frozenset[str]:
    """Ids of every carrier standing on site x at time t."""
    return frozenset(c.id for c in routeset.carriers if c.route.at(t) == x)


def _directed_edges(route: Route) -> list[tuple[str, str]]:
    p = route.period
    return [(route.sites[i], route.sites[(i + 1) % p]) for i in range(p)]


def is_simple(route: Route) -> bool:
    """No self-loops and no directed edge traversed at two distinct phases."""
    edges = _directed_edges(route)
    if any(a == b for a, b in edges):
        return False
    return len(set(edges)) == len(edges)


def is_irredundant(route: Route) -> bool:
    """Simple, and the route's edge graph is a single cycle or a tree tour.

    Rings traverse each undirected edge once; tree tours traverse each
    undirected edge exactly once per direction (period 2(d-1) over d sites).
    Either way no undirected edge is repeated in the same direction, which
    caps the period at 2(n-1).
    """
    if not is_simple(route):
        return False
    d = len(route.domain)
    p = route.period
    edges = set(_directed_edges(route))
    undirected = {frozenset(e) for e in edges}
    if p == d:
        ok = True  # simple cycle: every site exactly once
    elif p == 2 * (d - 1) and len(undirected) == d - 1 and all(
        (b, a) in edges for a, b in edges
    ):
        ok = True  # closed tree walk: each edge once per direction
    else:
        ok = False
    assert not ok or p <= 2 * (d - 1), "irredundant period bound violated"
    return ok


def is_homogeneous(routeset: RouteSet) -> bool:
    periods = {c.route.period for c in routeset.carriers}
    return len(periods) == 1


@dataclass(frozen=True)
class Witness:
    """One meeting: the pair stands on `site` at every time ≡ phase (mod recurrence)."""

    site: str
    phase: int
    recurrence: int


class MeetingGraph:
    """Undirected graph on carriers; an edge means the pair meets somewhere.

    Every edge carries its full witness list. Built once, then read-only.
    """

    def __init__(self, nodes: Sequence[str], witnesses: dict[tuple[str, str], tuple[Witness, ...]]):
        self.nodes = tuple(nodes)
        self._order = {c: i for i, c in enumerate(self.nodes)}
        self._witnesses = witnesses
        adj: dict[str, set[str]] = {c: set() for c in self.nodes}
        for a, b in witnesses:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {c: frozenset(v) for c, v in adj.items()}

    def _key(self, a: str, b: str) -> tuple[str, str]:
        return (a, b) if self._order[a] < self._order[b] else (b, a)

    def has_edge(self, a: str, b: str) -> bool:
        return a != b and self._key(a, b) in self._witnesses

    def witnesses(self, a: str, b: str) -> tuple[Witness, ...]:
        return self._witnesses.get(self._key(a, b), ())

    def neighbors(self, c: str) -> frozenset[str]:
        return self._adj[c]

    def edges(self) -> list[tuple[str, str]]:
        return sorted(self._witnesses, key=lambda e: (self._order[e[0]], self._order[e[1]]))

    def components(self) -> list[frozenset[str]]:
        out, left = [], set(self.nodes)
        while left:
            root = min(left, key=self._order.__getitem__)
            comp, frontier = {root}, [root]
            while frontier:
                for nb in self._adj[frontier.pop()]:
                    if nb not in comp:
                        comp.add(nb)
                        frontier.append(nb)
            out.append(frozenset(comp))
            left -= comp
        return out

    def component_of(self, c: str) -> frozenset[str]:
        for comp in self.components():
            if c in comp:
                return comp
        raise KeyError(c)


def build_meeting_graph(routeset: RouteSet, lcm_cap: int = DEFAULT_LCM_CAP) -> MeetingGraph:
    """Scan every carrier pair over one joint period and record all meetings."""
    idx = routeset.site_index
    arrs = [np.array([idx[s] for s in c.route.sites], dtype=np.int64) for c in routeset.carriers]
    witnesses: dict[tuple[str, str], tuple[Witness, ...]] = {}
    for i in range(routeset.k):
        for j in range(i + 1, routeset.k):
            pa, pb = len(arrs[i]), len(arrs[j])
            lcm = pa * pb // math.gcd(pa, pb)
            if lcm > lcm_cap:
                raise PeriodProductTooLarge(
                    f"carriers {routeset.carriers[i].id}/{routeset.carriers[j].id}: "
                    f"lcm {lcm} exceeds cap {lcm_cap}"
                )
            a = np.tile(arrs[i], lcm // pa)
            b = np.tile(arrs[j], lcm // pb)
            hits = np.flatnonzero(a == b)
            if hits.size:
                ws = tuple(
                    Witness(routeset.sites[int(a[t])], int(t), lcm) for t in hits
                )
                witnesses[(routeset.carriers[i].id, routeset.carriers[j].id)] = ws
    return MeetingGraph([c.id for c in routeset.carriers], witnesses)


def is_feasible(routeset: RouteSet, lcm_cap: int = DEFAULT_LCM_CAP) -> bool:
    """Can an agent starting on any carrier visit every site?

    True iff, for every carrier, the union of route domains across its
    meeting-graph component is the whole universe. Switching works in both
    directions at a meeting and meetings recur forever, so a component's
    domain union is exactly the reachable site set from anywhere inside it.
    """
    h = build_meeting_graph(routeset, lcm_cap)
    universe = set(routeset.sites)
    for comp in h.components():
        covered = set()
        for cid in comp:
            covered |= routeset.carrier(cid).route.domain
        if covered != universe:
            return False
    return True


def is_concrete_cover(routeset: RouteSet, walk: "Trace") -> bool:
    """Does the walk touch every site of the universe?

    The walk must be time-consistent: step i happens at time i and uses an
    edge its carrier actually activates then. Violations raise
    InconsistentWalk rather than returning False — an inconsistent walk
    covers nothing meaningfully.
    """
    here = position(routeset.carrier(walk.start_carrier), 0)
    touched = {here}
    for i, step in enumerate(walk.steps):
        c = routeset.carrier(step.carrier)
        if step.time != i:
            raise InconsistentWalk(f"step {i} carries time {step.time}")
        if step.from_site != here:
            # boarding a carrier that isn't standing where the agent is
            raise InconsistentWalk(
                f"step {i} departs {step.from_site} but the agent stands on {here}"
            )
        if position(c, i) != step.from_site or position(c, i + 1) != step.to_site:
            raise InconsistentWalk(
                f"step {i}: carrier {step.carrier} does not activate "
                f"({step.from_site} -> {step.to_site}) at time {i}"
            )
        here = step.to_site
        touched.add(here)
    return touched == set(routeset.sites)
