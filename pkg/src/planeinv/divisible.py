"""Invariant letters for the divisible case: n = r*d with ratio r >= 2.

Write the configuration matrix as M = (A | B) where A collects the first r
members (an n x n block) and B the remaining s - r.  In the left-translated
matrix ``phi = A^-1 B`` each member becomes a column of r blocks of size
d x d.  Ratios of those blocks,

    D_ij(N) = N_11 * N_i1^-1 * N_ij * N_1j^-1,

for 2 <= i <= r and 2 <= j <= s - r, are a full letter system: they are
unchanged by any left action, and a right action conjugates all of them by
one common d x d matrix, so traces of cyclic words in the letters are exact
orbit invariants.

:func:`embed` builds the normal-form configuration whose letters are any
prescribed grid, and :func:`matrix_data` recovers the grid exactly --
the roundtrip is an identity on the nose, not up to equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CaseMismatchError, DegenerateConfigError, DimensionMismatchError, SingularMatrixError
from .grassmann import CaseTag, Config, Subspace, classify_case
from .linalg import Mat, hstack, vstack
from .words import InvariantVector, build_vector


def _require_divisible(config: Config) -> CaseTag:
    tag = classify_case(config.n, config.d)
    if tag.kind != "divisible":
        raise CaseMismatchError(
            f"(n, d) = ({config.n}, {config.d}) is not in the divisible case"
        )
    return tag


def double_ratio(m: Mat, block_size: int) -> Mat:
    """The 2 x 2 block ratio of a 2d x 2d matrix: N11 N21^-1 N22 N12^-1."""
    if m.rows != 2 * block_size or m.cols != 2 * block_size:
        raise DimensionMismatchError("double_ratio needs a 2d x 2d matrix")
    return block_ratio(m, 2, 2, block_size)


def block_ratio(m: Mat, i: int, j: int, block_size: int) -> Mat:
    """Block ratio D_ij = N11 * N_i1^-1 * N_ij * N_1j^-1 (1-based block indices)."""
    d = block_size
    if m.rows % d or m.cols % d:
        raise DimensionMismatchError("matrix is not divided evenly into d x d blocks")
    br, bc = m.rows // d, m.cols // d
    if not (1 <= i <= br and 1 <= j <= bc):
        raise IndexError(f"block ({i}, {j}) out of range for a {br} x {bc} block grid")

    def blk(bi: int, bj: int) -> Mat:
        return m.block((bi - 1) * d, bi * d, (bj - 1) * d, bj * d)

    def inv(bi: int, bj: int) -> Mat:
        try:
            return blk(bi, bj).inverse()
        except SingularMatrixError:
            raise DegenerateConfigError(
                f"block ({bi}, {bj}) of the translated matrix is singular"
            ) from None

    return blk(1, 1) @ inv(i, 1) @ blk(i, j) @ inv(1, j)


def phi_left(config: Config) -> Mat:
    """Left-translate so the first r members become the identity: A^-1 B.

    Needs s > r; raises :class:`DegenerateConfigError` when the first r
    members do not span the ambient space.
    """
    tag = _require_divisible(config)
    r = tag.r
    if config.s <= r:
        raise CaseMismatchError(f"phi_left needs s > r = {r}, got s = {config.s}")
    a = hstack([sub.basis for sub in config.subspaces[:r]])
    b = hstack([sub.basis for sub in config.subspaces[r:]])
    try:
        a_inv = a.inverse()
    except SingularMatrixError:
        raise DegenerateConfigError(
            f"the first r = {r} members do not span the ambient space"
        ) from None
    return a_inv @ b


@dataclass(frozen=True)
class ReducedDivisible:
    """The letter grid of a divisible-case configuration.

    ``grid[i - 2][j - 2]`` is the d x d letter for block row i (2..r) and
    block column j (2..s-r); the grid is empty whenever s <= r + 1.
    """

    d: int
    r: int
    s: int
    grid: tuple[tuple[Mat, ...], ...]

    def __post_init__(self):
        if self.d < 1 or self.r < 2 or self.s < self.r + 1:
            raise ValueError("need d >= 1, r >= 2, s >= r + 1")
        want_rows, want_cols = self.r - 1, self.s - self.r - 1
        if len(self.grid) != want_rows or any(
            len(row) != want_cols for row in self.grid
        ):
            raise ValueError(
                f"grid must be {want_rows} x {want_cols} for "
                f"(d, r, s) = ({self.d}, {self.r}, {self.s})"
            )
        for row in self.grid:
            for m in row:
                if m.rows != self.d or m.cols != self.d:
                    raise ValueError(f"letters must be {self.d} x {self.d}")

    @property
    def n(self) -> int:
        return self.r * self.d

    def letter(self, i: int, j: int) -> Mat:
        return self.grid[i - 2][j - 2]

    def letter_ids(self) -> tuple[str, ...]:
        return tuple(
            f"G_{i}_{j}"
            for i in range(2, self.r + 1)
            for j in range(2, self.s - self.r + 1)
        )

    def letters(self) -> tuple[Mat, ...]:
        return tuple(m for row in self.grid for m in row)


def matrix_data(config: Config) -> ReducedDivisible:
    """Extract the full letter grid D_ij(phi) of a configuration."""
    tag = _require_divisible(config)
    r, d, s = tag.r, config.d, config.s
    if s <= r:
        raise CaseMismatchError(f"matrix_data needs s > r = {r}, got s = {s}")
    phi = phi_left(config)
    grid = tuple(
        tuple(block_ratio(phi, i, j, d) for j in range(2, s - r + 1))
        for i in range(2, r + 1)
    )
    return ReducedDivisible(d=d, r=r, s=s, grid=grid)


def embed(rd: ReducedDivisible) -> Config:
    """Normal-form configuration realizing a prescribed letter grid.

    Members 1..r are the coordinate blocks, member r+1 is the diagonal
    (identity in every block row), and member r+j carries the grid column j
    below an identity first block.  ``matrix_data(embed(x)) == x`` exactly,
    for any grid (the letters need not be invertible).
    """
    d, r, s = rd.d, rd.r, rd.s
    eye = Mat.identity(d)
    zero = Mat.zeros(d, d)

    def column(blocks: list[Mat]) -> Subspace:
        return Subspace(vstack(blocks))

    members = []
    for i in range(1, r + 1):
        members.append(column([eye if k == i else zero for k in range(1, r + 1)]))
    members.append(column([eye] * r))
    for j in range(2, s - r + 1):
        members.append(column([eye] + [rd.letter(i, j) for i in range(2, r + 1)]))
    return Config(members)


def check_general_position(config: Config) -> None:
    """Raise :class:`DegenerateConfigError` unless the reduction is defined.

    For s > r this means: the first r members span, and every d x d block of
    phi is invertible.  For s == r: the members span.  For s < r: the
    members are in direct sum.
    """
    tag = _require_divisible(config)
    r, d, s = tag.r, config.d, config.s
    if s < r:
        if config.matrix().rank() != s * d:
            raise DegenerateConfigError("members are not in direct sum")
        return
    if s == r:
        if config.matrix().rank() != r * d:
            raise DegenerateConfigError("members do not span the ambient space")
        return
    phi = phi_left(config)
    for i in range(1, r + 1):
        for j in range(1, s - r + 1):
            blk = phi.block((i - 1) * d, i * d, (j - 1) * d, j * d)
            if blk.rank() != d:
                raise DegenerateConfigError(
                    f"phi block ({i}, {j}) is singular", block=r + j
                )


def invariants(config: Config, max_len: int | None = None) -> InvariantVector:
    """Trace-invariant vector of a divisible-case configuration.

    Empty (no letters, no entries) in the almost-homogeneous range
    s <= r + 1, where all general-position configurations are equivalent.
    """
    tag = _require_divisible(config)
    r, d, s = tag.r, config.d, config.s
    if s <= r + 1:
        return build_vector(tag, config.n, d, s, [], [], d, max_len)
    rd = matrix_data(config)
    return build_vector(tag, config.n, d, s, rd.letter_ids(), rd.letters(), d, max_len)
