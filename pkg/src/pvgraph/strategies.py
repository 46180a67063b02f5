"""Exploration strategies.

Two real algorithms live here. The first explores anonymous systems knowing
only an upper bound B on the periods: it grows a tree over the carriers,
riding each for a fixed window long enough to meet every neighbor. The second
knows the site count n (and needs site identities) but no period bound: it
runs traversal attempts with a per-leg step budget that doubles until the
budget is ample, stopping the instant n distinct sites have been seen.

The tail of the module holds deliberately naive halting heuristics; they halt
on schedules that ignore the periods, which is exactly what the forge
constructions exploit.
"""
from __future__ import annotations

from .engine import HALT, Action, Observation, Ride
from .errors import NotIdMode

# ---------------------------------------------------------------------------
# tree-growing exploration under a known period bound


class HitchARide:
    """Anonymous exploration with a period bound B.

    Rides each newly reached carrier for B' steps (B if the system is known
    homogeneous, else B*B) — long enough to meet every carrier it ever meets,
    since a pair sharing a site does so once per lcm of their periods. New
    carriers met during such a visit become pending children; finished
    carriers hand the agent back to their parent. With B >= max period on a
    coverable system this halts after visiting the whole meeting-graph
    component, within (3k-2)*B' moves.
    """

    name = "hitch"

    def __init__(self, bound: int, homogeneous_known: bool = False):
        if bound < 1:
            raise ValueError("bound must be >= 1")
        self.bound = bound
        self.homogeneous_known = homogeneous_known
        self.visit_len = bound if homogeneous_known else bound * bound
        self._home: str | None = None
        self._visited: set[str] = set()
        self._pending: set[str] = set()  # met but not yet visited
        self._nbrs: dict[str, set[str]] = {}
        self._parent: dict[str, str | None] = {}
        # (mode, carrier, remaining): mode in visit/seek_child/seek_parent/forever
        self._state: tuple[str, str, int] | None = None

    def decide(self, obs: Observation) -> Action:
        cur = obs.current_carrier
        if self._state is None:
            self._home = cur
            self._pending = {cur}
            self._parent[cur] = None
            self._nbrs[cur] = set()
            self._state = ("visit", cur, self.visit_len)

        mode, c, remaining = self._state
        if mode == "visit":
            # record first meetings; seeks deliberately don't, so every
            # pending carrier is charged to exactly one visit (tree edges)
            for other in sorted(obs.arriving_carriers):
                if other not in self._visited and other not in self._pending:
                    self._pending.add(other)
                    self._nbrs[c].add(other)
            if remaining > 0:
                self._state = ("visit", c, remaining - 1)
                return Ride(c)
            self._visited.add(c)
            self._pending.discard(c)
            return self._dispatch(c, obs)
        if mode == "seek_child":
            want = self._nbrs[c] & self._pending & obs.arriving_carriers
            if want:
                return self._board_child(c, min(want))
            return Ride(c)
        if mode == "seek_parent":
            par = self._parent[c]
            if par is not None and par in obs.arriving_carriers:
                return self._dispatch(par, obs)
            return Ride(c)
        return Ride(cur)  # forever: nothing reachable is left, let the limit fire

    def _board_child(self, parent: str, child: str) -> Action:
        self._parent[child] = parent
        self._nbrs[child] = {parent}
        # the switch itself is the first of the child's B' visit moves
        self._state = ("visit", child, self.visit_len - 1)
        return Ride(child)

    def _dispatch(self, c: str, obs: Observation) -> Action:
        """Pick the next leg for a just-finished carrier c (agent is on c's site)."""
        targets = self._nbrs.get(c, set()) & self._pending
        if targets:
            here = targets & obs.arriving_carriers
            if here:
                return self._board_child(c, min(here))
            self._state = ("seek_child", c, 0)
            return Ride(c)
        if c == self._home:
            if not self._pending:
                return HALT
            self._state = ("forever", c, 0)
            return Ride(c)
        par = self._parent[c]
        if par is not None and par in obs.arriving_carriers:
            return self._dispatch(par, obs)  # collapse multi-hop returns
        # ride c itself: only c's own route guarantees meeting its parent
        self._state = ("seek_parent", c, 0)
        return Ride(c)


# ---------------------------------------------------------------------------
# guessed-budget exploration knowing n and site identities


class GuessingRide:
    """Exploration with known site count n, site ids, and no period bound.

    Runs depth-first traversal attempts where each riding leg spends at most
    `guess` moves. A leg that runs dry away from the root backtracks toward
    its parent; rediscovering anything unexpected, or running dry again,
    scraps the attempt: the guess doubles and the traversal restarts from
    wherever the agent is, keeping only the set of sites seen. Halts the
    instant that set reaches n.
    """

    name = "guess"

    def __init__(self, n: int, g0: int | None = None):
        if n < 1:
            raise ValueError("n must be >= 1")
        if g0 is None:
            g0 = n
        if g0 < 1:
            raise ValueError("g0 must be >= 1")
        self.n = n
        self.guess = g0
        self.seen_sites: set[str] = set()
        self._home: str | None = None
        self._known: set[str] = set()  # carriers seen this attempt
        self._parent: dict[str, str] = {}
        self._state: tuple[str, str, int] | None = None  # (mode, carrier, spent)

    def decide(self, obs: Observation) -> Action:
        if obs.site_identity is None:
            raise NotIdMode("this strategy needs site identities")
        self.seen_sites.add(obs.site_identity)
        if len(self.seen_sites) >= self.n:
            return HALT
        cur = obs.current_carrier
        if self._state is None:
            self._restart(cur)
        # transitions that consume no move loop back here
        while True:
            mode, c, spent = self._state
            if mode == "explore":
                fresh = sorted(obs.arriving_carriers - self._known)
                if fresh:
                    child = fresh[0]
                    self._known.add(child)  # only the boarded one is recorded
                    self._parent[child] = c
                    self._state = ("explore", child, 1)
                    return Ride(child)
                if spent < self.guess:
                    self._state = ("explore", c, spent + 1)
                    return Ride(c)
                if c == self._home:
                    self._restart(cur)  # budget spent at the root: bigger guess
                    continue
                self._state = ("backtrack", c, 0)
                continue
            # backtrack: parent first, then anything new, then exhaustion
            par = self._parent.get(c)
            if par is not None and par in obs.arriving_carriers:
                self._state = ("explore", par, 1)
                return Ride(par)
            if obs.arriving_carriers - self._known or spent >= self.guess:
                self._restart(cur)
                continue
            self._state = ("backtrack", c, spent + 1)
            return Ride(c)

    def _restart(self, cur: str) -> None:
        if self._state is not None:
            self.guess *= 2
        self._home = cur
        self._known = {cur}
        self._parent = {}
        self._state = ("explore", cur, 0)


# ---------------------------------------------------------------------------
# naive halting heuristics (forge targets)


class FixedStepHalt:
    """Rides its start carrier for a fixed number of moves, then halts."""

    name = "fixed-step"

    def __init__(self, moves: int):
        self.left = moves

    def decide(self, obs: Observation) -> Action:
        if self.left <= 0:
            return HALT
        self.left -= 1
        return Ride(obs.current_carrier)


class NoNewCarrierTimeout:
    """Halts once `window` consecutive moves pass without a new carrier id."""

    name = "no-new-carrier"

    def __init__(self, window: int):
        self.window = window
        self.quiet = 0
        self.known: set[str] = set()

    def decide(self, obs: Observation) -> Action:
        if obs.arriving_carriers - self.known:
            self.known |= obs.arriving_carriers
            self.quiet = 0
        else:
            self.quiet += 1
        if self.quiet > self.window:
            return HALT
        return Ride(obs.current_carrier)


class RideLegsHalt:
    """Rides fixed-length legs, hopping to an unridden carrier between legs."""

    name = "ride-legs"

    def __init__(self, leg_len: int, legs: int):
        self.leg_len = leg_len
        self.legs_left = legs
        self.step = 0
        self.ridden: set[str] = set()

    def decide(self, obs: Observation) -> Action:
        self.ridden.add(obs.current_carrier)
        if self.step == self.leg_len:
            self.step = 0
            self.legs_left -= 1
            if self.legs_left <= 0:
                return HALT
            new = sorted(obs.arriving_carriers - self.ridden)
            if new:
                self.step = 1
                return Ride(new[0])
        self.step += 1
        return Ride(obs.current_carrier)


class NoNewSiteTimeout:
    """Halts once `window` consecutive moves show no first-seen site."""

    name = "no-new-site"

    def __init__(self, window: int):
        self.window = window
        self.quiet = 0
        self.seen: set[str] = set()

    def decide(self, obs: Observation) -> Action:
        if obs.site_identity is None:
            raise NotIdMode("needs site identities")
        if obs.site_identity in self.seen:
            self.quiet += 1
        else:
            self.seen.add(obs.site_identity)
            self.quiet = 0
        if self.quiet > self.window:
            return HALT
        return Ride(obs.current_carrier)


class SiteRevisitHalt:
    """Halts once any single site has been observed `times` times."""

    name = "revisit-count"

    def __init__(self, times: int):
        self.times = times
        self.counts: dict[str, int] = {}

    def decide(self, obs: Observation) -> Action:
        if obs.site_identity is None:
            raise NotIdMode("needs site identities")
        c = self.counts.get(obs.site_identity, 0) + 1
        self.counts[obs.site_identity] = c
        if c >= self.times:
            return HALT
        return Ride(obs.current_carrier)
