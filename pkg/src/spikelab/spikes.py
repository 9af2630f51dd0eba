"""Diagonals, special standard representations, signatures, swaps, canonical forms.

A rank-n spike over GF(p) is pinned down by its diagonal: the vector
(x_1..x_n) of nonzero residues sitting in the co-basis block of the
n x (2n+1) special standard matrix [I | tip | tip + x_i e_i].  The
combinatorial fingerprint is the signature: the family of index sets I
with sum of inverse entries equal to -1, which are exactly the dependent
transversals (circuit-hyperplanes).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Union

from .bitsets import indices_from_mask, mask_from_indices
from .errors import (
    DependentTransversalError,
    MismatchedShapeError,
    NoCircuitHyperplaneError,
    NotInSignatureError,
    OutOfRangeError,
    RankDeficientError,
    TooLargeError,
    TooSmallError,
    ZeroEntryError,
)
from .field import PrimeField
from .matrix import MatrixGF

SIGNATURE_MAX_N = 24
CANONICAL_MAX_N = 7
ENUMERATE_MAX_P = 13

IndexSetLike = Union[int, Iterable[int]]


def as_mask(K: IndexSetLike, n: int) -> int:
    """Normalize an index set (bitmask int or iterable of 1-based indices)."""
    mask = K if isinstance(K, int) else mask_from_indices(K)
    if mask < 0 or mask >= (1 << n):
        raise OutOfRangeError(f"index set {K!r} not within [1, {n}]")
    return mask


@dataclass(frozen=True)
class Diagonal:
    """Nonzero residues (x_1..x_n) over GF(p), n >= 1."""

    field: PrimeField
    x: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        vals = tuple(int(v) % p for v in self.x)
        if len(vals) < 1:
            raise TooSmallError("diagonal needs at least one entry")
        if any(v == 0 for v in vals):
            raise ZeroEntryError(f"diagonal entries must be nonzero mod {p}")
        object.__setattr__(self, "x", vals)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def p(self) -> int:
        return self.field.p

    def inverses(self) -> tuple[int, ...]:
        return tuple(self.field.inv(v) for v in self.x)

    def balanced(self) -> tuple[int, ...]:
        return tuple(self.field.balanced_lift(v) for v in self.x)

    def text(self) -> str:
        return f"p={self.p};x=" + ",".join(str(v) for v in self.x)

    @classmethod
    def parse(cls, text: str) -> "Diagonal":
        """Parse `p=<prime>;x=<v1>,...,<vn>`; residues in [1, p) only."""
        parts = text.strip().split(";")
        if len(parts) != 2 or not parts[0].startswith("p=") or not parts[1].startswith("x="):
            raise ValueError(f"expected 'p=<prime>;x=<v1>,...,<vn>', got {text!r}")
        p = int(parts[0][2:])
        field = PrimeField(p)
        entries = []
        for tok in parts[1][2:].split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise ValueError(f"diagonal entries must be nonnegative residues, got {tok!r}")
            v = int(tok)
            if not 1 <= v < p:
                raise ValueError(f"entry {v} outside [1, {p})")
            entries.append(v)
        return cls(field, tuple(entries))

    def __repr__(self) -> str:
        return f"Diagonal({self.text()!r})"


@dataclass(frozen=True)
class SpikeRep:
    """n x (2n+1) special standard matrix; labels track which original column sits where."""

    matrix: MatrixGF
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.matrix.rows

    def diagonal(self) -> Diagonal:
        """Read the diagonal off the co-basis block; insists on the standard pattern."""
        n = self.n
        m = self.matrix.entries
        p = self.matrix.field.p
        x = []
        for j in range(n):
            for i in range(n):
                want = 1 if i != j else None
                got = m[i][n + 1 + j]
                if want is not None and got != want:
                    raise MismatchedShapeError("co-basis block is not in standard form")
            x.append((m[j][n + 1 + j] - 1) % p)
        return Diagonal(self.matrix.field, tuple(x))


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(
        [f"e{i}" for i in range(1, n + 1)] + ["t"] + [f"f{i}" for i in range(1, n + 1)]
    )


def build_rep(x: Diagonal) -> SpikeRep:
    """The special standard matrix [I | 1 | t + x_i e_i]."""
    n = x.n
    if n < 3:
        raise TooSmallError(f"spike matroids need n >= 3, got n={n}")
    p = x.p
    rows = []
    for i in range(n):
        e_block = [1 if j == i else 0 for j in range(n)]
        f_block = [(1 + x.x[j]) % p if j == i else 1 for j in range(n)]
        rows.append(e_block + [1] + f_block)
    return SpikeRep(matrix=MatrixGF(x.field, rows), labels=default_labels(n))


def _parallel(M: MatrixGF, j: int, k: int) -> bool:
    return M.select_columns([j, k]).rank() <= 1


def check_axioms(R: SpikeRep) -> bool:
    """Rank-oracle verification of the three spike conditions.

    (i) each line {e_i, t, f_i} is a rank-2 set of three pairwise
    non-parallel nonzero points; (ii) any k < n lines together have rank
    k+1; (iii) all n lines have rank n.
    """
    n = R.n
    if n < 3:
        raise TooSmallError(f"spike matroids need n >= 3, got n={n}")
    M = R.matrix
    if M.cols != 2 * n + 1:
        raise MismatchedShapeError(f"expected {2 * n + 1} columns, got {M.cols}")
    line = [[i, n, n + 1 + i] for i in range(n)]
    for cols in line:
        if any(all(v == 0 for v in M.column(j)) for j in cols):
            return False
        if M.select_columns(cols).rank() != 2:
            return False
        for j, k in itertools.combinations(cols, 2):
            if _parallel(M, j, k):
                return False
    for k in range(1, n):
        for lines in itertools.combinations(range(n), k):
            cols = sorted({c for i in lines for c in line[i]})
            if M.select_columns(cols).rank() != k + 1:
                return False
    return M.rank() == n


@dataclass(frozen=True)
class Signature:
    """Set family over [1,n] as a 2^n-bit pattern: subset I sits at bit mask(I)."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits & 1:
            raise ValueError("empty set cannot be a signature member")
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise OutOfRangeError("bit pattern wider than 2^n")

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def members(self) -> tuple[int, ...]:
        """Member subsets as masks, ascending."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def member_indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(indices_from_mask(m) for m in self.members())

    def __contains__(self, K: IndexSetLike) -> bool:
        mask = as_mask(K, self.n)
        return bool(self.bits >> mask & 1)

    def hex(self) -> str:
        digits = ((1 << self.n) + 3) // 4
        return format(self.bits, f"0{digits}x")

    @classmethod
    def from_hex(cls, n: int, text: str) -> "Signature":
        return cls(n=n, bits=int(text, 16))

    @classmethod
    def from_members(cls, n: int, members: Iterable[IndexSetLike]) -> "Signature":
        bits = 0
        for K in members:
            bits |= 1 << as_mask(K, n)
        return cls(n=n, bits=bits)

    def xor_transform(self, S: IndexSetLike) -> "Signature":
        """The swap law: members map to their symmetric difference with S."""
        smask = as_mask(S, self.n)
        bits = 0
        for m in self.members():
            t = m ^ smask
            if t == 0:
                raise DependentTransversalError("transform would produce the empty set")
            bits |= 1 << t
        return Signature(self.n, bits)

    def permute(self, perm: tuple[int, ...]) -> "Signature":
        """perm maps old index i to perm[i-1]; members map pointwise."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise OutOfRangeError(f"not a permutation of [1,{self.n}]: {perm!r}")
        bits = 0
        for m in self.members():
            t = 0
            for i in indices_from_mask(m):
                t |= 1 << (perm[i - 1] - 1)
            bits |= 1 << t
        return Signature(self.n, bits)


def signature(x: Diagonal) -> Signature:
    """All nonempty I with sum over I of x_i^-1 = -1; Gray-code incremental sums."""
    n = x.n
    if n > SIGNATURE_MAX_N:
        raise TooLargeError(f"signature enumeration capped at n={SIGNATURE_MAX_N}")
    p = x.p
    invs = x.inverses()
    target = p - 1
    bits = 0
    gray = 0
    acc = 0
    for k in range(1, 1 << n):
        low = k & -k
        j = low.bit_length() - 1
        gray ^= low
        if gray & low:
            acc = (acc + invs[j]) % p
        else:
            acc = (acc - invs[j]) % p
        if acc == target:
            bits |= 1 << gray
    return Signature(n=n, bits=bits)


def is_dependent_transversal(x: Diagonal, K: IndexSetLike) -> bool:
    """Prop-2.3 fast path: the transversal taking f_i at K is dependent iff sum = -1."""
    mask = as_mask(K, x.n)
    if mask == 0:
        return False
    invs = x.inverses()
    acc = 0
    for i in indices_from_mask(mask):
        acc += invs[i - 1]
    return acc % x.p == x.p - 1


def circuit_hyperplane(x: Diagonal, I: IndexSetLike) -> tuple[str, ...]:
    """Column labels of the circuit-hyperplane circuit for a signature member."""
    n = x.n
    if n < 3:
        raise TooSmallError(f"spike matroids need n >= 3, got n={n}")
    mask = as_mask(I, n)
    if not is_dependent_transversal(x, mask):
        raise NotInSignatureError(f"{indices_from_mask(mask)} is not in the signature")
    return tuple(f"f{i}" if mask >> (i - 1) & 1 else f"e{i}" for i in range(1, n + 1))


def swap(x: Diagonal, S: IndexSetLike) -> Diagonal:
    """Interchange conjugates at S and re-standardize, at the diagonal level.

    With s = sum over S of x_i^-1 the new transversal is a basis iff
    1 + s != 0, and the re-standardized diagonal is x_i (1+s) off S and
    -x_i (1+s) on S (cross-checked against change_basis_standardize).
    """
    n = x.n
    smask = as_mask(S, n)
    if smask == 0:
        return x
    p = x.p
    invs = x.inverses()
    s = sum(invs[i] for i in range(n) if smask >> i & 1) % p
    fac = (1 + s) % p
    if fac == 0:
        raise DependentTransversalError(
            f"swap set {indices_from_mask(smask)} is in the signature"
        )
    y = tuple(
        (-x.x[i] * fac) % p if smask >> i & 1 else (x.x[i] * fac) % p for i in range(n)
    )
    return Diagonal(x.field, y)


def change_basis_standardize(R: SpikeRep, S: IndexSetLike) -> SpikeRep:
    """Matrix-level swap: change to the transversal basis at S, then re-standardize.

    Order of operations: invert the new basis block, reorder columns so the
    new basis leads (labels move with their columns), scale each row to make
    the tip column all ones (compensating in the basis block), then scale
    each co-basis column to make its off-diagonal entries 1.  The final
    pattern is asserted before the diagonal is read off.
    """
    n = R.n
    smask = as_mask(S, n)
    if smask == 0:
        return R
    field = R.matrix.field
    p = field.p
    basis_src = [n + 1 + i if smask >> i & 1 else i for i in range(n)]
    cobasis_src = [i if smask >> i & 1 else n + 1 + i for i in range(n)]
    B = R.matrix.select_columns(basis_src)
    try:
        Binv = B.inverse()
    except RankDeficientError:
        raise DependentTransversalError(
            f"transversal at {indices_from_mask(smask)} is not a basis"
        ) from None
    M2 = Binv.matmul(R.matrix)
    order = basis_src + [n] + cobasis_src
    M3 = M2.select_columns(order)
    labels = tuple(R.labels[j] for j in order)
    ent = M3.entries
    for i in range(n):
        for j in range(n):
            assert ent[i][j] == (1 if i == j else 0), "basis block failed to reduce"
    tip = [ent[i][n] for i in range(n)]
    assert all(tip), "tip column hit a zero coordinate"
    alpha = [field.inv(t) for t in tip]
    out = [[1 if j == i else 0 for j in range(n)] + [1] + [0] * n for i in range(n)]
    for j in range(n):
        col = [(alpha[i] * ent[i][n + 1 + j]) % p for i in range(n)]
        off = {col[i] for i in range(n) if i != j}
        assert len(off) == 1, "co-basis column off-diagonals disagree"
        common = off.pop()
        assert common != 0, "co-basis column has zero off-diagonal"
        beta = field.inv(common)
        d = (col[j] * beta) % p
        y = (d - 1) % p
        assert y != 0, "re-standardized diagonal entry is zero"
        for i in range(n):
            out[i][n + 1 + j] = 1 if i != j else (1 + y) % p
    return SpikeRep(matrix=MatrixGF(field, out), labels=labels)


def normalize(x: Diagonal) -> Diagonal:
    """A weakly equivalent diagonal with first entry -1.

    Take the lexicographically least signature member I, move min(I) to
    position 1 by a transposition, then swap at I minus its minimum.
    """
    sig = signature(x)
    if sig.bits == 0:
        raise NoCircuitHyperplaneError("signature is empty; nothing to normalize at")
    I = min(sig.members(), key=indices_from_mask)
    m = (I & -I).bit_length()  # 1-based minimum of I
    if m != 1:
        perm = list(x.x)
        perm[0], perm[m - 1] = perm[m - 1], perm[0]
        x = Diagonal(x.field, tuple(perm))
        I = (I & ~(1 << (m - 1))) | 1
    y = swap(x, I & ~1)
    assert y.x[0] == x.p - 1
    return y


def swap_closure(x: Diagonal) -> list[Diagonal]:
    """All diagonals reachable by sequences of swaps, in first-seen order.

    One application per valid S already gives the closure (swaps compose by
    symmetric difference of their sets); breadth-first search keeps that a
    checked fact rather than an assumption.
    """
    n = x.n
    seen = {x.x}
    queue = [x]
    out = [x]
    while queue:
        z = queue.pop()
        sig = signature(z)
        for smask in range(1, 1 << n):
            if smask in sig:
                continue
            w = swap(z, smask)
            if w.x not in seen:
                seen.add(w.x)
                queue.append(w)
                out.append(w)
    return out


def canonical_form(x: Diagonal) -> Diagonal:
    """Lexicographically least diagonal over the swap-and-permutation orbit."""
    if x.n > CANONICAL_MAX_N:
        raise TooLargeError(f"canonical form capped at n={CANONICAL_MAX_N}")
    best = min(tuple(sorted(z.x)) for z in swap_closure(x))
    return Diagonal(x.field, best)


def weakly_equivalent(x: Diagonal, y: Diagonal) -> bool:
    if x.p != y.p or x.n != y.n:
        raise MismatchedShapeError(
            f"cannot compare p={x.p},n={x.n} against p={y.p},n={y.n}"
        )
    return canonical_form(x).x == canonical_form(y).x


def orbit(x: Diagonal) -> set[tuple[int, ...]]:
    """Full weak-equivalence orbit: permutations of every swap-closure member."""
    return {
        tuple(perm)
        for z in swap_closure(x)
        for perm in itertools.permutations(z.x)
    }


def enumerate_spikes(p: int, n: int) -> list[Diagonal]:
    """One canonical representative per weak-equivalence class, lex order."""
    return [d for d, _ in _enumerate_orbits(p, n)]


def spike_census(p: int, n: int) -> dict:
    """Class census with orbit sizes; orbit sizes must add up to (p-1)^n."""
    t0 = time.perf_counter()
    classes = _enumerate_orbits(p, n)
    total = sum(size for _, size in classes)
    assert total == (p - 1) ** n, "orbits failed to partition the diagonals"
    return {
        "p": p,
        "n": n,
        "class_count": len(classes),
        "classes": [
            {"diagonal": list(d.x), "orbit_size": size} for d, size in classes
        ],
        "total_diagonals": total,
        "ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }


def _enumerate_orbits(p: int, n: int) -> list[tuple[Diagonal, int]]:
    field = PrimeField(p)
    if n > CANONICAL_MAX_N:
        raise TooLargeError(f"enumeration capped at n={CANONICAL_MAX_N}")
    if p > ENUMERATE_MAX_P:
        raise TooLargeError(f"enumeration capped at p={ENUMERATE_MAX_P}")
    seen: set[tuple[int, ...]] = set()
    classes: list[tuple[Diagonal, int]] = []
    for vec in itertools.product(range(1, p), repeat=n):
        if vec in seen:
            continue
        orb = orbit(Diagonal(field, vec))
        assert vec == min(orb), "lex scan should meet each orbit at its minimum"
        seen.update(orb)
        classes.append((Diagonal(field, vec), len(orb)))
    return classes
