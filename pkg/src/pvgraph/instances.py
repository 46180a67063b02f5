"""Instance generators: hard families, random systems, and adversarial forges.

Each hard family realizes a worst-case construction with a proved lower bound
on the moves any explorer needs; the generator attaches that bound, freshly
evaluated from the family's formula. The two forges run a halting strategy,
then rebuild the system so the very same strategy provably halts too early —
a mechanized counterexample factory.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import ANONYMOUS, IDS, RouteSet, is_feasible, position
from .engine import Strategy, Trace, run
from .errors import (
    NoCoprimePair,
    NoSuitablePrime,
    ParameterViolation,
    StrategyDidNotHalt,
)

FAMILIES = {
    "thm3": "thm3_arb_homo",
    "thm4": "thm4_arb_hetero",
    "siho": "siho_simple_homo",
    "sihe": "sihe_simple_hetero",
    "thm7": "thm7_circ_homo",
    "thm8": "thm8_circ_hetero",
    "random": "random",
}


@dataclass(frozen=True)
class Instance:
    """A generated system plus its pedigree: family, parameters, bound, start.

    `start` is the carrier the family's adversary argument pins the agent to;
    audits measure the optimum from there.
    """

    family: str
    params: tuple[tuple[str, int], ...]
    routeset: RouteSet
    bound: int | None
    start: str

    @property
    def param_dict(self) -> dict[str, int]:
        return dict(self.params)


def _require(cond: bool, constraint: str) -> None:
    if not cond:
        raise ParameterViolation(f"constraint violated: {constraint}")


def _is_prime(x: int) -> bool:
    if x < 2:
        return False
    f = 2
    while f * f <= x:
        if x % f == 0:
            return False
        f += 1
    return True


def _max_prime_below(limit: int) -> int | None:
    """Largest prime strictly below `limit` (trial division; sizes are tiny)."""
    for cand in range(limit - 1, 1, -1):
        if _is_prime(cand):
            return cand
    return None


def _slow_spoke(anchor: str, others: Sequence[str], anchor_phase: int, p: int) -> list[str]:
    """Period-p route with `anchor` exactly at phase anchor_phase.

    The remaining sites fill the other p-1 phases, front-loaded with repeats
    of the first one so the final distinct site lands as late as possible —
    an explorer boarding at the anchor learns nothing new until it has ridden
    nearly a full period.
    """
    m = 1 + len(others)
    filler = [others[0]] * (p - m + 1) + list(others[1:])
    route = [""] * p
    route[anchor_phase % p] = anchor
    for off, site in enumerate(filler, start=1):
        route[(anchor_phase + off) % p] = site
    return route


def _split_last_lump(names: list[str], groups: int) -> list[list[str]]:
    """Equal groups of floor size; the remainder lands in the last group."""
    base = len(names) // groups
    out = [names[i * base : (i + 1) * base] for i in range(groups)]
    out[-1].extend(names[groups * base :])
    return out


# ---------------------------------------------------------------------------
# hub-and-spoke families (arbitrary routes)


def gen_thm3(n: int, k: int, p: int) -> RouteSet:
    """Homogeneous hub-and-spoke system forcing ~(k-2)p moves.

    k-1 spoke carriers each own a site group; spoke i holds its anchor x_i
    only at phases ≡ i (mod p). The hub cycles x_0,x_1,... so it meets spoke
    i exactly when both stand on x_i. An explorer must ride nearly a full
    period inside every spoke and wait a full period between transfers.
    """
    _require(n >= 9, "n >= 9")
    _require(3 <= k <= n / 3, "3 <= k <= n/3")
    _require(p >= max(k - 1, -(-n // (k - 1))), "p >= max(k-1, ceil(n/(k-1)))")
    base, rem = divmod(n, k - 1)
    _require(p >= base + rem, "p >= floor(n/(k-1)) + n mod (k-1) (largest group must fit one period)")
    names = [f"x{i}" for i in range(k - 1)]
    sites = list(names)
    groups = []
    for i, cnt in enumerate(_split_last_lump(list(range(n)), k - 1)):
        extra = [f"s{i}_{j}" for j in range(1, len(cnt))]
        sites.extend(extra)
        groups.append([f"x{i}", *extra])
    routes = [
        (f"c{i}", _slow_spoke(g[0], g[1:], i, p)) for i, g in enumerate(groups)
    ]
    routes.append((f"c{k-1}", [f"x{j % (k - 1)}" for j in range(p)]))
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def thm3_bound(n: int, k: int, p: int) -> int:
    return (k - 2) * (p + 1) + n // (k - 1)


def gen_thm4(n: int, k: int, p: int) -> RouteSet:
    """Heterogeneous variant: the hub has period p-1, spokes period p.

    Coprime periods make each hub/spoke rendezvous recur only every p(p-1)
    steps, so every transfer costs up to a full product period.
    """
    _require(n >= 9, "n >= 9")
    _require(3 <= k <= n / 3, "3 <= k <= n/3")
    _require(p >= max(k - 1, -(-n // k)), "p >= max(k-1, ceil(n/k))")
    _require(p >= k + 2, "p >= k+2 (hub period p-1 must fit a0, k-1 anchors, and a1)")
    base, rem = divmod(n - 2, k - 1)
    _require(p >= base + rem, "p >= floor((n-2)/(k-1)) + (n-2) mod (k-1)")
    hub = [""] * (p - 1)
    hub[0] = "a0"
    for i in range(1, k):
        hub[i] = f"x{i}"
    for ph in range(k, p - 1):
        hub[ph] = "a1"
    sites = ["a0", "a1"] + [f"x{i}" for i in range(1, k)]
    routes = [("c0", hub)]
    for idx, cnt in enumerate(_split_last_lump(list(range(n - 2)), k - 1)):
        i = idx + 1
        extra = [f"s{i}_{j}" for j in range(1, len(cnt))]
        sites.extend(extra)
        routes.append((f"c{i}", _slow_spoke(f"x{i}", extra, i % p, p)))
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def thm4_bound(n: int, k: int, p: int) -> int:
    return (k - 2) * (p - 1) * p + (n - 2) // (k - 1) - 1


# ---------------------------------------------------------------------------
# simple-route families built on a prime stride table


def _stride_index(i: int, j: int, m: int) -> int:
    # row s uses stride s+1; with m prime, rows of two distinct carriers
    # never align, so carriers collide only where the construction wants
    s, r = divmod(j, m)
    return (i + (s + 1) * r) % m


def gen_siho(n: int, k: int) -> RouteSet:
    """Homogeneous system of simple routes that still costs ~k*p moves.

    All carriers share a common corridor z_1..z_nbar, then diverge into
    per-carrier stride walks over x_0..x_{m-1} (m the largest prime below
    n-k), each ending at a private terminal y_i. Meetings happen only inside
    the corridor, so reaching every terminal forces near-full periods.
    """
    _require(n >= 4, "n >= 4")
    _require(2 <= k <= n / 2, "2 <= k <= n/2")
    m = _max_prime_below(n - k)
    if m is None:
        raise NoSuitablePrime(f"no prime below n-k = {n - k}")
    _require(k <= m, "k <= largest prime below n-k")
    nbar = n - m - k
    corridor = [f"z{l}" for l in range(1, nbar + 1)]
    routes = []
    for i in range(1, k + 1):
        walk = [f"x{_stride_index(i, j, m)}" for j in range(1, m * m - m + 1)]
        routes.append((f"c{i-1}", corridor + walk + [f"y{i}"]))
    sites = corridor + [f"x{i}" for i in range(m)] + [f"y{i}" for i in range(1, k + 1)]
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def siho_params(n: int, k: int) -> tuple[int, int, int]:
    """(m, nbar, p) for the corridor construction."""
    m = _max_prime_below(n - k)
    if m is None:
        raise NoSuitablePrime(f"no prime below n-k = {n - k}")
    nbar = n - m - k
    return m, nbar, m * m - m + 1 + nbar


def siho_bound(n: int, k: int) -> int:
    m, nbar, p = siho_params(n, k)
    return k * p - nbar


def gen_sihe(n: int, k: int) -> RouteSet:
    """Heterogeneous simple routes: coprime periods q and q+1, star meetings.

    Carrier c_0 (period q) meets each other carrier (period q+1) at a single
    private site z_i whose rendezvous recurs only every q(q+1) steps; all
    other fragments are arranged so no other pair of carriers ever collides.
    """
    _require(n >= 36, "n >= 36")
    _require(4 <= k <= n / 6 - 2, "4 <= k <= n/6 - 2")
    m = _max_prime_below((n - 3 * k - 4) // 2 + 1)
    if m is None:
        raise NoSuitablePrime(f"no prime at or below (n-3k-4)/2 = {(n - 3*k - 4) // 2}")
    _require(k <= m, "k <= chosen prime")
    nbar = n - (3 * k - 4) - 2 * m
    ceil_h = (nbar + 1) // 2
    floor_h = nbar // 2
    big = m * m - m

    routes = []
    # c0: x-stride walk, first half of the w corridor, then the z contact row
    alpha0 = [f"x{_stride_index(0, j, m)}" for j in range(1, big - ceil_h + 1)]
    gamma0 = [f"w{l}" for l in range(1, ceil_h + 1)]
    zeta0 = [f"z{l}" for l in range(1, k)]
    routes.append(("c0", alpha0 + gamma0 + zeta0))
    for i in range(1, k):
        a_len = big - floor_h - i + 1
        alpha = [f"y{_stride_index(i, j, m)}" for j in range(1, a_len + 1)]
        gamma = [f"w{l}" for l in range(ceil_h + 1, nbar + 1)]
        delta = [f"y{_stride_index(i, j, m)}" for j in range(a_len + 1, a_len + i)]
        zeta = [""] * k
        zeta[0] = f"u{i}"
        zeta[i] = f"z{i}"
        for o in range(1, k):
            if o != i:  # 0 < |o-i| < k-1, so the residue is never 0
                zeta[o] = f"v{(o - i) % (k - 1)}"
        routes.append((f"c{i}", alpha + gamma + delta + zeta))

    sites = (
        [f"x{j}" for j in range(m)]
        + [f"y{j}" for j in range(m)]
        + [f"w{l}" for l in range(1, nbar + 1)]
        + [f"u{i}" for i in range(1, k)]
        + [f"v{l}" for l in range(1, k - 1)]
        + [f"z{l}" for l in range(1, k)]
    )
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def sihe_params(n: int, k: int) -> tuple[int, int, int, int]:
    """(m, nbar, q, p): prime, corridor width, and the two periods."""
    m = _max_prime_below((n - 3 * k - 4) // 2 + 1)
    if m is None:
        raise NoSuitablePrime(f"no prime at or below (n-3k-4)/2 = {(n - 3*k - 4) // 2}")
    nbar = n - (3 * k - 4) - 2 * m
    q = m * m - m + k - 1
    return m, nbar, q, q + 1


def sihe_bound(n: int, k: int) -> int:
    _, _, _, p = sihe_params(n, k)
    return (k - 2) * p * (p - 1) + p - k + 1


# ---------------------------------------------------------------------------
# circular-route families


def gen_thm7(n: int, k: int) -> RouteSet:
    """Homogeneous rings-on-a-spine: all carriers meet only at x_0.

    Carrier i walks out the spine x_i..x_{n-k-1}, loops through the low spine
    to its private tip y_i, and retraces — a closed tree walk of period
    2(n-k) whose only simultaneous co-location across carriers is x_0 at
    times ≡ 0.
    """
    _require(n >= 4, "n >= 4")
    _require(2 <= k <= n / 2, "2 <= k <= n/2")
    spine = n - k
    routes = []
    for i in range(1, k + 1):
        out = [f"x{j}" for j in range(i, spine)]
        low = [f"x{j}" for j in range(1, i)]
        path = out + low + [f"y{i}"] + low[::-1] + out[::-1]
        routes.append((f"c{i-1}", ["x0"] + path))
    sites = [f"x{j}" for j in range(spine)] + [f"y{i}" for i in range(1, k + 1)]
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def thm7_bound(n: int, k: int) -> int:
    return n * (k - 1)


def thm8_periods(n: int, k: int) -> tuple[int, int]:
    """Coprime (r, q) with r < q and q + r = n - k + 3.

    Even n-k: consecutive integers. Odd n-k: the two closest odd numbers
    around (n-k+3)/2 whose gap (2 or 4) shares no odd factor.
    """
    total = n - k + 3
    if (n - k) % 2 == 0:
        r, q = (n - k) // 2 + 1, (n - k) // 2 + 2
    elif total % 4 == 0:
        r, q = total // 2 - 1, total // 2 + 1
    else:
        r, q = total // 2 - 2, total // 2 + 2
    if r < 2:
        raise NoCoprimePair(f"n-k = {n - k} leaves no coprime pair with r >= 2")
    assert math.gcd(r, q) == 1 and r < q
    return r, q


def gen_thm8(n: int, k: int) -> RouteSet:
    """Heterogeneous rings: one short ring (period r) and k-1 long rings
    (period q, coprime to r), all sharing exactly the site x_0. Long ring i
    is the x-cycle rotated by i with a private tail site z_i, so long rings
    never collide with each other and meet the short ring only every qr steps.
    """
    _require(k >= 3, "k >= 3 (the bound formula needs the k-2 relay term)")
    r, q = thm8_periods(n, k)
    _require(q >= k + 1, "q >= k+1 (each long ring needs a distinct rotation)")
    routes = [("c0", ["x0"] + [f"y{l}" for l in range(1, r)])]
    for i in range(1, k):
        cyc = [f"x{(i + t) % (q - 1)}" for t in range(q - 1)]
        routes.append((f"c{i}", cyc + [f"z{i}"]))
    sites = (
        [f"x{j}" for j in range(q - 1)]
        + [f"y{l}" for l in range(1, r)]
        + [f"z{i}" for i in range(1, k)]
    )
    return RouteSet.from_routes(routes, IDS, tuple(sites))


def thm8_bound(n: int, k: int) -> int:
    r, q = thm8_periods(n, k)
    return (k - 2) * (q * r + r) + r + q


# ---------------------------------------------------------------------------
# random systems


def gen_random_feasible(n: int, k: int, p_max: int, seed: int) -> RouteSet:
    """Seeded random system, repaired to be coverable from everywhere.

    Coverage is guaranteed by scattering all n sites across the route slots.
    If the meeting structure still leaves some carrier short, every route
    gets the first site appended: all periods then share the residue -1,
    so every pair provably meets there.
    """
    _require(n >= 1 and k >= 1, "n, k >= 1")
    _require(p_max >= 1, "p_max >= 1")
    _require(k * p_max >= n, "k * p_max >= n (enough slots to place every site)")
    rng = random.Random(seed)
    sites = [f"s{i}" for i in range(n)]
    periods = [rng.randint(1, p_max) for _ in range(k)]
    i = 0
    while sum(periods) < n:  # deterministic bump until every site can fit
        periods[i % k] = min(p_max, periods[i % k] + (n - sum(periods)))
        i += 1
    routes = [[rng.choice(sites) for _ in range(p)] for p in periods]
    slots = [(ci, j) for ci, p in enumerate(periods) for j in range(p)]
    rng.shuffle(slots)
    for s, (ci, j) in zip(sites, slots):
        routes[ci][j] = s
    rs = RouteSet.from_routes(
        [(f"c{ci}", r) for ci, r in enumerate(routes)], IDS, tuple(sites)
    )
    if k > 1 and not is_feasible(rs):
        routes = [r + [sites[0]] for r in routes]
        rs = RouteSet.from_routes(
            [(f"c{ci}", r) for ci, r in enumerate(routes)], IDS, tuple(sites)
        )
    return rs


def random_routeset_raw(n: int, k: int, p_max: int, seed: int) -> RouteSet:
    """Unrepaired sampler: coverage enforced, feasibility left to chance."""
    _require(k * p_max >= n, "k * p_max >= n")
    rng = random.Random(seed)
    sites = [f"s{i}" for i in range(n)]
    periods = [rng.randint(1, p_max) for _ in range(k)]
    i = 0
    while sum(periods) < n:
        periods[i % k] = min(p_max, periods[i % k] + (n - sum(periods)))
        i += 1
    routes = [[rng.choice(sites) for _ in range(p)] for p in periods]
    slots = [(ci, j) for ci, p in enumerate(periods) for j in range(p)]
    rng.shuffle(slots)
    for s, (ci, j) in zip(sites, slots):
        routes[ci][j] = s
    return RouteSet.from_routes(
        [(f"c{ci}", r) for ci, r in enumerate(routes)], IDS, tuple(sites)
    )


# ---------------------------------------------------------------------------
# instance dispatcher


def make_instance(
    family: str,
    n: int,
    k: int,
    p: int | None = None,
    seed: int | None = None,
) -> Instance:
    """Build a family instance with its bound and designated start attached."""
    long_name = FAMILIES.get(family, family)
    if long_name not in FAMILIES.values():
        raise ParameterViolation(f"unknown family {family!r}")
    if long_name == "thm3_arb_homo":
        if p is None:
            raise ParameterViolation("thm3 needs p")
        rs = gen_thm3(n, k, p)
        # the adversary parks the agent on the hub, the last carrier
        return Instance(long_name, (("n", n), ("k", k), ("p", p)), rs,
                        thm3_bound(n, k, p), f"c{k-1}")
    if long_name == "thm4_arb_hetero":
        if p is None:
            raise ParameterViolation("thm4 needs p")
        rs = gen_thm4(n, k, p)
        return Instance(long_name, (("n", n), ("k", k), ("p", p)), rs,
                        thm4_bound(n, k, p), "c0")
    if long_name == "siho_simple_homo":
        rs = gen_siho(n, k)
        return Instance(long_name, (("n", n), ("k", k)), rs, siho_bound(n, k), "c0")
    if long_name == "sihe_simple_hetero":
        rs = gen_sihe(n, k)
        return Instance(long_name, (("n", n), ("k", k)), rs, sihe_bound(n, k), "c0")
    if long_name == "thm7_circ_homo":
        rs = gen_thm7(n, k)
        return Instance(long_name, (("n", n), ("k", k)), rs, thm7_bound(n, k), "c0")
    if long_name == "thm8_circ_hetero":
        rs = gen_thm8(n, k)
        return Instance(long_name, (("n", n), ("k", k)), rs, thm8_bound(n, k), "c0")
    if seed is None:
        seed = 0
    rs = gen_random_feasible(n, k, p if p is not None else max(2, n), seed)
    params = (("n", n), ("k", k), ("p", p if p is not None else max(2, n)), ("seed", seed))
    return Instance("random", params, rs, None, "c0")


#: Smallest parameter point each family's constraints admit.
SMALLEST_LEGAL = {
    "thm3_arb_homo": {"n": 9, "k": 3, "p": 5},
    "thm4_arb_hetero": {"n": 9, "k": 3, "p": 5},
    "siho_simple_homo": {"n": 5, "k": 2},
    "sihe_simple_hetero": {"n": 36, "k": 4},
    "thm7_circ_homo": {"n": 4, "k": 2},
    "thm8_circ_hetero": {"n": 7, "k": 3},
}


# ---------------------------------------------------------------------------
# impossibility forges


def _walk_nodes(rs: RouteSet, trace: Trace) -> list[str]:
    return [position(rs.carrier(trace.start_carrier), 0)] + [s.to_site for s in trace.steps]


def _halting_run(rs: RouteSet, strategy: Strategy, move_limit: int | None) -> Trace:
    trace = run(rs, strategy, rs.carriers[0].id, move_limit)
    if not trace.halted:
        raise StrategyDidNotHalt(
            f"strategy still riding after {trace.moves} moves"
        )
    return trace


def forge_thm1(
    strategy_factory: Callable[[int, int], Strategy],
    n: int,
    k: int,
    move_limit: int | None = None,
) -> tuple[RouteSet, RouteSet, bool]:
    """Defeat a period-blind anonymous strategy.

    Run it on k identical cycles over n sites. Wherever it halted, splice a
    decoy segment into the route: the stretch ridden after discovering the
    (n-1)-th site is duplicated with the last-found site renamed to the
    second-to-last. Site-blind and fed identical carrier arrivals, the
    strategy replays its action sequence on the spliced system and halts on
    the decoy — one site short. Returns (G, G', verdict); verdict is True
    when the replay indeed halted without covering.
    """
    _require(n >= 3, "n >= 3")
    _require(k >= 1, "k >= 1")
    sites = [f"x{i}" for i in range(n)]
    g = RouteSet.from_routes(
        [(f"c{i}", list(sites)) for i in range(k)], ANONYMOUS, tuple(sites)
    )
    trace = _halting_run(g, strategy_factory(n, k), move_limit)
    nodes = _walk_nodes(g, trace)
    if len(trace.visited_sites) < n:
        gprime = g  # already fails on G itself: nothing to splice
    else:
        last = trace.visited_sites[-1]
        second = trace.visited_sites[-2]
        t_pen = nodes.index(second)  # discovery instant of site n-2
        alpha = nodes[: t_pen + 1]
        beta = nodes[t_pen + 1 :]
        gamma = [second if s == last else s for s in beta]
        gprime = RouteSet.from_routes(
            [(f"c{i}", alpha + gamma + beta) for i in range(k)],
            ANONYMOUS,
            tuple(sites),
        )
    retrace = _halting_run(gprime, strategy_factory(n, k), move_limit)
    verdict = set(retrace.visited_sites) != set(gprime.sites)
    return g, gprime, verdict


def forge_thm2(
    strategy_factory: Callable[[int], Strategy],
    n: int,
    k: int,
    move_limit: int | None = None,
) -> tuple[RouteSet, RouteSet, bool]:
    """Defeat a size-blind strategy even with full site identities.

    Record the exact site sequence of its halting walk, then build a system
    whose route replays that sequence before reaching one extra site. The
    strategy sees the identical observation stream, halts on schedule, and
    never learns the extra site existed.
    """
    _require(n >= 1, "n >= 1")
    _require(k >= 1, "k >= 1")
    sites = [f"x{i}" for i in range(n)]
    g = RouteSet.from_routes(
        [(f"c{i}", list(sites)) for i in range(k)], IDS, tuple(sites)
    )
    trace = _halting_run(g, strategy_factory(k), move_limit)
    nodes = _walk_nodes(g, trace)
    extra = f"x{n}"
    gprime = RouteSet.from_routes(
        [(f"c{i}", nodes + [extra]) for i in range(k)], IDS, tuple(sites) + (extra,)
    )
    retrace = _halting_run(gprime, strategy_factory(k), move_limit)
    verdict = extra not in set(retrace.visited_sites)
    return g, gprime, verdict
