"""Lattice vector sets V_n, C_n, R_n, S_n and their filters.

Vectors are plain tuples of non-negative ints of length N (the ambient
dimension).  V_n is the solution set of the two-row Fibonacci system

    sum_i x_i h_i     = h_n        (row 1)
    sum_i x_i h_{i-1} = h_{n-1}    (row 2)

Enumeration assigns x_n down to x_3 (largest coefficients first, maximal
pruning) and closes with the 2x2 base system x_2 = r2, x_1 = r1 - r2.
A partial assignment is completable iff its residuals satisfy r1 >= r2 >= 0,
so the search tree has essentially no dead branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .arith import FibTable, fib_table

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SetFamily:
    n: int
    N: int
    kind: str  # "V" | "C" | "R" | "S"
    members: tuple[Vector, ...]  # sorted lexicographically, no duplicates

    def __post_init__(self):
        if self.kind not in ("V", "C", "R", "S"):
            raise ValueError(f"unknown family kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.members)

    def __contains__(self, v: Vector) -> bool:
        return v in set(self.members)


def pad(v: Sequence[int], N: int) -> Vector:
    if len(v) > N:
        if any(v[N:]):
            raise ValueError(f"vector {tuple(v)} does not fit in dimension {N}")
        return tuple(v[:N])
    return tuple(v) + (0,) * (N - len(v))


def trim(v: Sequence[int]) -> Vector:
    """Drop trailing zeros (printing convention for reports)."""
    k = len(v)
    while k > 1 and v[k - 1] == 0:
        k -= 1
    return tuple(v[:k])


def residual(v: Sequence[int], fib: FibTable) -> tuple[int, int]:
    """A.v for the 2xN Fibonacci matrix (row1 uses h_i, row2 uses h_{i-1})."""
    r1 = sum(x * fib[i + 1] for i, x in enumerate(v))
    r2 = sum(x * fib[i] for i, x in enumerate(v))
    return r1, r2


def in_V(v: Sequence[int], n: int, fib: FibTable) -> bool:
    return all(x >= 0 for x in v) and residual(v, fib) == (fib[n], fib[n - 1])


def iter_V(n: int, N: int, fib: FibTable | None = None,
           bound: Sequence[int] | None = None) -> Iterator[Vector]:
    """Yield members of V_n (dimension N) in DFS order, unsorted.

    ``bound`` optionally caps each coordinate (componentwise), used by the
    factorization enumerator to restrict parts dominated by a target.
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    h = fib or fib_table(n, N)
    tail = (0,) * (N - max(n, 2))

    def rec(i: int, r1: int, r2: int, suffix: Vector) -> Iterator[Vector]:
        if i == 2:
            x2, x1 = r2, r1 - r2
            if bound is not None and (x1 > bound[0] or x2 > bound[1]):
                return
            yield (x1, x2) + suffix
            return
        m = min(r1 // h[i], r2 // h[i - 1])
        if bound is not None:
            m = min(m, bound[i - 1])
        for x in range(m + 1):
            nr1, nr2 = r1 - x * h[i], r2 - x * h[i - 1]
            if nr1 >= nr2:
                yield from rec(i - 1, nr1, nr2, (x,) + suffix)

    yield from rec(max(n, 2), h[n], h[n - 1], tail)


def _packed_rows(n: int, N: int, fib: FibTable) -> tuple[list[int], int]:
    """All of V_n as ints packing x_1..x_N big-endian (lex order == numeric).

    Much lighter than tuples for the large families (V_13 is ~11.2M rows);
    entries are bounded by h_{n-1} so the byte width is chosen from that.
    """
    h = fib
    width = max(1, (h[n - 1].bit_length() + 7) // 8) * 8
    out: list[int] = []
    app = out.append
    s1, s2 = width * (N - 1), width * (N - 2)

    def rec(i: int, r1: int, r2: int, acc: int) -> None:
        if i == 2:
            app(((r1 - r2) << s1) | (r2 << s2) | acc)
            return
        hi, lo = h[i], h[i - 1]
        m = min(r1 // hi, r2 // lo)
        sh = width * (N - i)
        for x in range(m + 1):
            nr1, nr2 = r1 - x * hi, r2 - x * lo
            if nr1 >= nr2:
                rec(i - 1, nr1, nr2, acc | (x << sh))

    rec(max(n, 2), h[n], h[n - 1], 0)
    return out, width


def unpack_row(row: int, N: int, width: int) -> Vector:
    mask = (1 << width) - 1
    return tuple((row >> (width * (N - 1 - i))) & mask for i in range(N))


def sorted_rows(n: int, N: int, fib: FibTable | None = None) -> tuple[list[int], int]:
    """V_n as lexicographically sorted packed rows plus the byte width."""
    h = fib or fib_table(n, N)
    rows, width = _packed_rows(n, N, h)
    rows.sort()
    return rows, width


def enumerate_V(n: int, N: int, fib: FibTable | None = None) -> SetFamily:
    """V_n materialized and sorted.  Heavy for n = 13 (~11.2M vectors);
    prefer sorted_rows / the disk cache at that scale."""
    return SetFamily(n, N, "V", tuple(sorted(iter_V(n, N, fib))))


def is_almost_consecutive_free(z: Sequence[int]) -> bool:
    """True iff every adjacent nonzero pair z_j, z_{j+1} is final: no
    nonzero entry may follow such a pair."""
    last = len(z) - 1
    while last > 0 and z[last] == 0:
        last -= 1
    for j in range(last - 1):
        if z[j] and z[j + 1]:
            return False
    return True


def enumerate_C(n: int, N: int, fib: FibTable | None = None,
                vectors: Iterable[Vector] | None = None) -> SetFamily:
    """Almost consecutive-free members of V_n.

    ``vectors`` may supply V_n (e.g. streamed from the disk cache) to avoid
    re-enumeration.
    """
    src = vectors if vectors is not None else iter_V(n, N, fib)
    members = sorted(z for z in src if is_almost_consecutive_free(z))
    return SetFamily(n, N, "C", tuple(members))


def x_vector(n: int, i: int, N: int, fib: FibTable | None = None) -> Vector:
    """Generator x_n(i): h_{n+1-i} in slot i-2, h_{n+2-i} in slot i-1."""
    h = fib or fib_table(n, N)
    if (n, i) == (1, 2):
        return pad((1,), N)
    if not 3 <= i <= n + 1:
        raise ValueError(f"x_vector index i={i} outside 3..{n + 1}")
    v = [0] * N
    v[i - 3] = h[n + 1 - i]
    v[i - 2] = h[n + 2 - i]
    return tuple(v)


def trivial_element(n: int, N: int) -> Vector:
    """Unit vector in slot n: the one-part representation of alpha_n."""
    return x_vector(n, n + 1, N) if n >= 2 else x_vector(1, 2, N)


def build_S(n: int, N: int, fib: FibTable | None = None) -> SetFamily:
    h = fib or fib_table(n, N)
    if n == 1:
        members = (x_vector(1, 2, N, h),)
    else:
        members = tuple(x_vector(n, i, N, h) for i in range(3, n + 2))
    return SetFamily(n, N, "S", tuple(sorted(members)))


def shift_lambda(x: Sequence[int]) -> Vector:
    """The injection (x_1,...,x_N) -> (0, x_1,...,x_{N-1}) from V_{n-1} to V_n."""
    if x[-1] != 0:
        raise ValueError("last entry nonzero: shift would leave the dimension")
    return (0,) + tuple(x[:-1])


def enumerate_factorizations(z: Sequence[int], n: int, N: int,
                             fib: FibTable | None = None,
                             cap_parts: int | None = None) -> list[tuple[Vector, ...]]:
    """All factorizations of z into parts from V_1 u ... u V_n, as canonical
    multisets (parts in non-increasing lex order; permutations identified).

    Includes the trivial factorization (z itself) and, for z not the trivial
    element, the improper one into unit generators.
    """
    h = fib or fib_table(n, N)
    z = pad(z, N)
    if not in_V(z, n, h):
        raise ValueError(f"{z} is not in V_{n}")
    cap = cap_parts if cap_parts is not None else sum(z)
    pool = sorted(
        {v for i in range(1, n + 1) for v in iter_V(i, N, h, bound=z)},
        reverse=True,
    )
    results: list[tuple[Vector, ...]] = []
    parts: list[Vector] = []

    def rec(rem: Vector, start: int) -> None:
        if not any(rem):
            results.append(tuple(parts))
            return
        if len(parts) >= cap:
            return
        for k in range(start, len(pool)):
            v = pool[k]
            if all(a <= b for a, b in zip(v, rem)):
                parts.append(v)
                rec(tuple(a - b for a, b in zip(rem, v)), k)
                parts.pop()

    rec(z, 0)
    return results


def enumerate_R(n: int, N: int, prior: Sequence[SetFamily],
                fib: FibTable | None = None,
                c_family: SetFamily | None = None) -> SetFamily:
    """S-restricted members of C_n.

    Uses the inductive criterion: z in C_n \\ S_n fails to be S-restricted
    exactly when some earlier x in R_i \\ S_i (i < n) is dominated by z
    componentwise.  ``prior`` must hold the R families for 1..n-1 in order.
    """
    h = fib or fib_table(n, N)
    if len(prior) < n - 1:
        raise ValueError(f"enumerate_R({n}) needs R families for 1..{n - 1}")
    for i, fam in enumerate(prior[: n - 1], start=1):
        if fam.kind != "R" or fam.n != i:
            raise ValueError(f"prior[{i - 1}] is not the R family for n={i}")
    s_members = set(build_S(n, N, h).members)
    pool = [x for i in range(1, n)
            for x in set(prior[i - 1].members) - set(build_S(i, N, h).members)]
    cn = c_family if c_family is not None else enumerate_C(n, N, h)
    members = set(s_members)
    for z in cn:
        if z in s_members:
            continue
        if not any(all(zc >= xc for zc, xc in zip(z, x)) for x in pool):
            members.add(z)
    return SetFamily(n, N, "R", tuple(sorted(members)))


def build_R_chain(n_max: int, N: int, fib: FibTable | None = None,
                  c_families: dict[int, SetFamily] | None = None) -> list[SetFamily]:
    """R_1..R_{n_max}, computed inductively; c_families may pre-supply C_n."""
    h = fib or fib_table(n_max, N)
    chain: list[SetFamily] = []
    for n in range(1, n_max + 1):
        cf = c_families.get(n) if c_families else None
        chain.append(enumerate_R(n, N, chain, h, c_family=cf))
    return chain


def r_minus_s(n: int, N: int, r_family: SetFamily,
              fib: FibTable | None = None) -> list[Vector]:
    s = set(build_S(n, N, fib).members)
    return [z for z in r_family.members if z not in s]


def delta(n: int, N: int, r_chain: Sequence[SetFamily],
          fib: FibTable | None = None) -> list[Vector]:
    """New points of R_n \\ S_n not explained by the shift of level n-1."""
    h = fib or fib_table(n, N)
    cur = set(r_minus_s(n, N, r_chain[n - 1], h))
    if n >= 2:
        shifted = {shift_lambda(x) for x in r_minus_s(n - 1, N, r_chain[n - 2], h)}
        cur -= shifted
    return sorted(cur)
