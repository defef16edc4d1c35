"""Invariant letters for the odd-multiple case: n = (2r+1)e, d = 2e.

Every member of a configuration is first column-normalized to the shape
(E; C_i) with an identity top (:func:`column_normalize`).  All further
structure is extracted from intersections with sums of the leading members,
computed as canonical kernels:

* r = 1 (n = 3e): the three pairwise intersections of the first three
  members assemble an invertible frame H (:func:`frame_3e`); expressing the
  remaining members in H-coordinates yields pairs (alpha_{2i-1}, alpha_{2i})
  of e x e blocks, and normalizing by the fourth member's pair gives the
  letters sigma_9..sigma_{2s} (:func:`sigma_data`).

* r >= 2: three kernel systems (:func:`nullspace_component`) produce the
  column blocks of a frame H (:func:`frame_odd`); in H-coordinates, members
  r+1 and onward are right-normalized by canonical kernels into a/b/c
  column blocks with provable zero patterns (:func:`reduce_odd`), from
  which block ratios build the Z and Theta letters (:func:`letters_odd`).

All kernel and solve steps use the canonical reduced-echelon basis.  The
residual ambiguity of every frame choice is a single right GL_e factor, so
the letters transform by one common conjugation under both group actions
and their word traces are exact invariants; the property suite tests that
invariance rather than relying on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CaseMismatchError,
    DegenerateConfigError,
    RankDeficientError,
    SingularMatrixError,
    WrongKernelDimension,
    ZeroPatternViolation,
)
from .grassmann import CaseTag, Config, classify_case
from .linalg import Mat, hstack, vstack
from .words import InvariantVector, build_vector


def _require_odd(config: Config) -> CaseTag:
    tag = classify_case(config.n, config.d)
    if tag.kind != "odd_multiple":
        raise CaseMismatchError(
            f"(n, d) = ({config.n}, {config.d}) is not in the odd-multiple case"
        )
    return tag


@dataclass(frozen=True)
class NormalizedColumns:
    """Members rewritten as (E; C_i): identity top, (2r-1)e x 2e bottom."""

    e: int
    r: int
    s: int
    blocks: tuple[Mat, ...]  # n x 2e each, top identity
    bottoms: tuple[Mat, ...]  # the C_i, (2r-1)e x 2e each

    @property
    def d(self) -> int:
        return 2 * self.e

    @property
    def n(self) -> int:
        return (2 * self.r + 1) * self.e

    def block(self, i: int) -> Mat:
        """Normalized member i (1-based)."""
        return self.blocks[i - 1]

    def bottom(self, i: int) -> Mat:
        """C_i (1-based)."""
        return self.bottoms[i - 1]


def column_normalize(config: Config) -> NormalizedColumns:
    """Normalize every member to identity-top form; spans are unchanged.

    Raises :class:`DegenerateConfigError` (with the 1-based block index)
    when some member's top d x d minor is singular.
    """
    tag = _require_odd(config)
    d = config.d
    blocks, bottoms = [], []
    for i, sub in enumerate(config, start=1):
        top = sub.basis.block(0, d, 0, d)
        try:
            normalized = sub.basis @ top.inverse()
        except SingularMatrixError:
            raise DegenerateConfigError(
                f"top {d}x{d} minor of block {i} is singular", block=i
            ) from None
        blocks.append(normalized)
        bottoms.append(normalized.block(d, config.n, 0, d))
    return NormalizedColumns(
        e=tag.e, r=tag.r, s=config.s, blocks=tuple(blocks), bottoms=tuple(bottoms)
    )


@dataclass(frozen=True)
class Frame3e:
    """The 3e x 3e frame of the r = 1 case.

    Column block k is (x_k; y_k; E) and spans the pairwise intersection of
    members (1,2), (3,1), (2,3) respectively.
    """

    e: int
    xs: tuple[Mat, Mat, Mat]
    ys: tuple[Mat, Mat, Mat]
    h: Mat


_PAIRS_3E = ((1, 2), (3, 1), (2, 3))


def frame_3e(nc: NormalizedColumns) -> Frame3e:
    """Assemble the pairwise-intersection frame for n = 3e.

    For each pair (a, b) the block system [[c_a, d_a], [c_b, d_b]] is solved
    against (E; E): the resulting column (x; y; E) lies in both members.
    Solving against the stacked identity is the order that makes the
    containment true with noncommuting e x e blocks.
    """
    if nc.r != 1:
        raise CaseMismatchError(f"frame_3e needs r = 1, got r = {nc.r}")
    if nc.s < 3:
        raise CaseMismatchError(f"frame_3e needs s >= 3, got s = {nc.s}")
    e = nc.e
    halves = []
    for i in range(1, 4):
        c = nc.bottom(i)  # e x 2e for r = 1
        halves.append((c.block(0, e, 0, e), c.block(0, e, e, 2 * e)))
    like = nc.blocks[0].data[0][0]
    eye = Mat.identity(e, like=like)
    rhs = vstack([eye, eye])
    xs, ys = [], []
    for a, b in _PAIRS_3E:
        ca, da = halves[a - 1]
        cb, db = halves[b - 1]
        system = vstack([hstack([ca, da]), hstack([cb, db])])
        try:
            sol = system.solve(rhs)
        except RankDeficientError:
            raise DegenerateConfigError(
                f"members {a} and {b} are not transverse enough to intersect in dimension e"
            ) from None
        xs.append(sol.block(0, e, 0, e))
        ys.append(sol.block(e, 2 * e, 0, e))
    h = vstack([hstack(xs), hstack(ys), hstack([eye, eye, eye])])
    return Frame3e(e=e, xs=tuple(xs), ys=tuple(ys), h=h)


@dataclass(frozen=True)
class LetterSetOdd:
    """The invariant letter alphabet of an odd-multiple configuration.

    Exactly one of the two shapes is populated: ``sigma`` for r = 1,
    ``zed``/``thetas`` for r >= 2.  ``ids()``/``mats()`` flatten to the
    canonical alphabet order used by the trace words.
    """

    e: int
    r: int
    s: int
    sigma: tuple[Mat, ...] = ()
    zed: tuple[Mat, ...] = ()
    thetas: tuple[tuple[int, tuple[Mat, ...]], ...] = ()

    def ids(self) -> tuple[str, ...]:
        if self.r == 1:
            return tuple(f"sigma_{k}" for k in range(9, 9 + len(self.sigma)))
        out = [f"Z_{k}" for k in range(1, len(self.zed) + 1)]
        for i, comps in self.thetas:
            out.extend(f"Theta_{i}_{c}" for c in range(1, len(comps) + 1))
        return tuple(out)

    def mats(self) -> tuple[Mat, ...]:
        if self.r == 1:
            return self.sigma
        out = list(self.zed)
        for _, comps in self.thetas:
            out.extend(comps)
        return tuple(out)

    def __len__(self) -> int:
        return len(self.sigma) + len(self.zed) + sum(len(c) for _, c in self.thetas)


def _alpha_pairs(nc: NormalizedColumns, frame: Frame3e) -> dict[int, Mat]:
    """The e x e blocks alpha_7..alpha_{2s} of members 4..s in frame coordinates.

    Member i becomes H^-1 M_i; right-normalizing by its top 2e x 2e block
    leaves (E; 0 / 0; E / alpha_{2i-1} alpha_{2i}).
    """
    e, d, n = nc.e, nc.d, nc.n
    h_inv = frame.h.inverse()
    alphas: dict[int, Mat] = {}
    for i in range(4, nc.s + 1):
        t = h_inv @ nc.block(i)
        top = t.block(0, d, 0, d)
        try:
            pair = t.block(d, n, 0, d) @ top.inverse()
        except SingularMatrixError:
            raise DegenerateConfigError(
                f"block {i} is not transverse to the frame plane", block=i
            ) from None
        alphas[2 * i - 1] = pair.block(0, e, 0, e)
        alphas[2 * i] = pair.block(0, e, e, 2 * e)
    return alphas


def sigma_data(nc: NormalizedColumns, frame: Frame3e) -> LetterSetOdd:
    """The r = 1 letters sigma_9..sigma_{2s} (needs s >= 5).

    sigma_{2i-1} = alpha_{2i-1} alpha_7^-1 and sigma_{2i} = alpha_{2i}
    alpha_8^-1 for i = 5..s: member 4's pair normalizes all later pairs,
    which uses up the last of the group freedom and leaves exact invariants.
    """
    if nc.r != 1:
        raise CaseMismatchError(f"sigma_data needs r = 1, got r = {nc.r}")
    if nc.s < 5:
        raise CaseMismatchError(f"sigma_data needs s >= 5, got s = {nc.s}")
    alphas = _alpha_pairs(nc, frame)
    try:
        a7_inv = alphas[7].inverse()
        a8_inv = alphas[8].inverse()
    except SingularMatrixError:
        raise DegenerateConfigError(
            "block 4 normalization blocks are singular", block=4
        ) from None
    sigma = []
    for i in range(5, nc.s + 1):
        sigma.append(alphas[2 * i - 1] @ a7_inv)
        sigma.append(alphas[2 * i] @ a8_inv)
    return LetterSetOdd(e=nc.e, r=1, s=nc.s, sigma=tuple(sigma))


def nullspace_component(
    nc: NormalizedColumns, member_blocks: Sequence[int], target_block: int
) -> list[Mat]:
    """Canonical kernel of the stacked difference system, split per member.

    Solves sum_m (E; C_m) u_m in member ``target_block`` by eliminating the
    target coefficient:  sum_m (C_m - C_t) u_m = 0.  The kernel must have
    dimension exactly e (:class:`WrongKernelDimension` otherwise); its
    canonical basis is returned as one 2e x e block per member, and stacking
    (E; C_m) X_m over the members spans target ∩ (sum of members).
    """
    members = list(member_blocks)
    if len(set(members)) != len(members) or target_block in members:
        raise ValueError("member blocks must be distinct and exclude the target")
    for i in (*members, target_block):
        if not 1 <= i <= nc.s:
            raise IndexError(f"block index {i} out of range for s = {nc.s}")
    ct = nc.bottom(target_block)
    system = hstack([nc.bottom(m) - ct for m in members])
    kernel = system.nullspace_basis()
    if kernel.cols != nc.e:
        raise WrongKernelDimension(
            f"intersection kernel of blocks {members} with block {target_block} "
            f"has dimension {kernel.cols}, expected {nc.e}",
            expected=nc.e,
            actual=kernel.cols,
            block=target_block,
        )
    d = nc.d
    return [kernel.block(k * d, (k + 1) * d, 0, nc.e) for k in range(len(members))]


@dataclass(frozen=True)
class FrameOdd:
    """The n x n frame of the r >= 2 case.

    Column pairs 2i-1, 2i are (E; C_i) X_i and (E; C_i) Y_i for i = 1..r;
    the final column is (E; C_{r+1}) Z_{r+1}.  X targets member r+1, Y and
    Z target member r+2.
    """

    e: int
    r: int
    x: tuple[Mat, ...]
    y: tuple[Mat, ...]
    z: tuple[Mat, ...]
    h: Mat


def frame_odd(nc: NormalizedColumns) -> FrameOdd:
    """Assemble the intersection frame for r >= 2 (needs s >= r + 2)."""
    r = nc.r
    if r < 2:
        raise CaseMismatchError(f"frame_odd needs r >= 2, got r = {r}")
    if nc.s < r + 2:
        raise CaseMismatchError(f"frame_odd needs s >= r + 2 = {r + 2}, got s = {nc.s}")
    first_r = list(range(1, r + 1))
    x = nullspace_component(nc, first_r, r + 1)
    y = nullspace_component(nc, first_r, r + 2)
    z = nullspace_component(nc, list(range(1, r)) + [r + 1], r + 2)
    cols = []
    for i in range(1, r + 1):
        block = nc.block(i)
        cols.append(block @ x[i - 1])
        cols.append(block @ y[i - 1])
    cols.append(nc.block(r + 1) @ z[-1])
    return FrameOdd(e=nc.e, r=r, x=tuple(x), y=tuple(y), z=tuple(z), h=hstack(cols))


@dataclass(frozen=True)
class ReducedOdd:
    """The a/b/c column blocks of a configuration in frame coordinates.

    ``a_col`` is the right-normalized extra column of member r+1 (kernel of
    its bottom e-row block); for each j = r+2..s, ``b_cols[j]`` is member
    j's column killed at row block 2r+1 and ``c_cols[j]`` the one killed at
    row block 2r.  Blocks are addressed 1-based: ``a_block(k)`` etc.
    """

    e: int
    r: int
    s: int
    a_col: Mat  # n x e
    b_cols: dict[int, Mat]  # j -> n x e
    c_cols: dict[int, Mat]  # j -> n x e

    def _block(self, col: Mat, k: int) -> Mat:
        return col.block((k - 1) * self.e, k * self.e, 0, self.e)

    def a_block(self, k: int) -> Mat:
        return self._block(self.a_col, k)

    def b_block(self, j: int, k: int) -> Mat:
        return self._block(self.b_cols[j], k)

    def c_block(self, j: int, k: int) -> Mat:
        return self._block(self.c_cols[j], k)


def _row_block(m: Mat, k: int, e: int) -> Mat:
    return m.block((k - 1) * e, k * e, 0, m.cols)


def reduce_odd(config: Config, frame: FrameOdd) -> ReducedOdd:
    """Express members r+1..s in frame coordinates and normalize columns.

    Member j in H-coordinates is N_j = H^-1 (E; C_j).  Right-normalization
    picks canonical column combinations: for member r+1, the e columns
    killed at row block 2r+1 (the a-column; the complementary e columns
    land on the identity at row block 2r+1, which is possible exactly
    because that row block has full rank e -- implied by the kernel having
    dimension e); for members j >= r+2, the columns killed at row block
    2r+1 (the b-column, spanning the X-type intersection) and at row block
    2r (the c-column).

    The provable vanishing is asserted exactly: a-blocks vanish at the even
    positions and at 2r+1, and the b-column of member r+2 vanishes at all
    odd positions; a violation raises :class:`ZeroPatternViolation`.
    """
    tag = _require_odd(config)
    nc = column_normalize(config)
    e, r, s = nc.e, nc.r, nc.s
    if (tag.r, tag.e) != (r, e) or frame.r != r or frame.e != e:
        raise CaseMismatchError("frame does not match the configuration")
    try:
        h_inv = frame.h.inverse()
    except SingularMatrixError:
        raise DegenerateConfigError("intersection frame is singular") from None

    def normalized_column(j: int, kill_row_block: int) -> Mat:
        n_j = h_inv @ nc.block(j)
        kernel = _row_block(n_j, kill_row_block, e).nullspace_basis()
        if kernel.cols != e:
            raise WrongKernelDimension(
                f"row block {kill_row_block} of member {j} in frame coordinates "
                f"has kernel dimension {kernel.cols}, expected {e}",
                expected=e,
                actual=kernel.cols,
                block=j,
            )
        return n_j @ kernel

    a_col = normalized_column(r + 1, 2 * r + 1)
    b_cols = {j: normalized_column(j, 2 * r + 1) for j in range(r + 2, s + 1)}
    c_cols = {j: normalized_column(j, 2 * r) for j in range(r + 2, s + 1)}
    red = ReducedOdd(e=e, r=r, s=s, a_col=a_col, b_cols=b_cols, c_cols=c_cols)

    for k in range(2, 2 * r + 2, 2):
        if not red.a_block(k).is_zero():
            raise ZeroPatternViolation(f"a-block {k} should vanish but does not")
    if not red.a_block(2 * r + 1).is_zero():
        raise ZeroPatternViolation(f"a-block {2 * r + 1} should vanish but does not")
    for k in range(1, 2 * r + 2, 2):
        if not red.b_block(r + 2, k).is_zero():
            raise ZeroPatternViolation(
                f"b-block ({k}, {r + 2}) should vanish but does not"
            )
    return red


def _inv_or_degenerate(m: Mat, what: str, block: int) -> Mat:
    try:
        return m.inverse()
    except SingularMatrixError:
        raise DegenerateConfigError(f"{what} is singular", block=block) from None


def letters_odd(reduced: ReducedOdd) -> LetterSetOdd:
    """The Z and Theta letters of the r >= 2 case.

    All letters are ratios of a/b/c blocks arranged so that both group
    actions conjugate every letter by one common e x e factor:

    * P = c_{1,r+2} c_{2,r+2}^-1 primes the ratios;
    * Z letters (j = 2..r-1, empty for r = 2):
      c_{2j-1,r+2} c_{1,r+2}^-1 and P c_{2j,r+2} c_{1,r+2}^-1;
    * Theta letters for each member i = r+3..s, with
      delta_i = (c_{1,i} - c_{2r-1,i})^-1:
      P b_{2,i} b_{1,i}^-1,  P c_{2,i} delta_i,  and for j = 2..r the
      quadruple  b_{2j-1,i} b_{1,i}^-1,  P b_{2j,i} b_{1,i}^-1,
      (c_{2j-1,i} - c_{2r-1,i}) delta_i  (at j = r: c_{2r-1,i} delta_i),
      P c_{2j,i} delta_i  (at j = r:
      c_{1,r+2} c_{2r+1,r+2}^-1 c_{2r+1,i} delta_i).

    Total count: 2r-4 + (4r-2)(s-r-2), the k of the odd case.
    """
    e, r, s = reduced.e, reduced.r, reduced.s
    if r < 2:
        raise CaseMismatchError(f"letters_odd needs r >= 2, got r = {r}")
    if s == r + 2 and r == 2:
        return LetterSetOdd(e=e, r=r, s=s)

    c1 = reduced.c_block(r + 2, 1)
    c2 = reduced.c_block(r + 2, 2)
    c1_inv = _inv_or_degenerate(c1, "c-block (1, r+2)", r + 2)
    p = c1 @ _inv_or_degenerate(c2, "c-block (2, r+2)", r + 2)

    zed = []
    for j in range(2, r):
        zed.append(reduced.c_block(r + 2, 2 * j - 1) @ c1_inv)
        zed.append(p @ reduced.c_block(r + 2, 2 * j) @ c1_inv)

    thetas = []
    cbar_inv = None
    if s >= r + 3:
        cbar_inv = _inv_or_degenerate(
            reduced.c_block(r + 2, 2 * r + 1), f"c-block ({2 * r + 1}, r+2)", r + 2
        )
    for i in range(r + 3, s + 1):
        b1_inv = _inv_or_degenerate(reduced.b_block(i, 1), f"b-block (1, {i})", i)
        delta = _inv_or_degenerate(
            reduced.c_block(i, 1) - reduced.c_block(i, 2 * r - 1),
            f"c-block difference (1, {i}) - ({2 * r - 1}, {i})",
            i,
        )
        comps = [
            p @ reduced.b_block(i, 2) @ b1_inv,
            p @ reduced.c_block(i, 2) @ delta,
        ]
        for j in range(2, r + 1):
            comps.append(reduced.b_block(i, 2 * j - 1) @ b1_inv)
            comps.append(p @ reduced.b_block(i, 2 * j) @ b1_inv)
            if j < r:
                comps.append(
                    (reduced.c_block(i, 2 * j - 1) - reduced.c_block(i, 2 * r - 1)) @ delta
                )
                comps.append(p @ reduced.c_block(i, 2 * j) @ delta)
            else:
                comps.append(reduced.c_block(i, 2 * r - 1) @ delta)
                comps.append(c1 @ cbar_inv @ reduced.c_block(i, 2 * r + 1) @ delta)
        thetas.append((i, tuple(comps)))
    return LetterSetOdd(e=e, r=r, s=s, zed=tuple(zed), thetas=tuple(thetas))


def check_general_position(config: Config) -> None:
    """Raise :class:`DegenerateConfigError` unless the reduction is defined.

    Runs the widest frame construction the member count allows, so this is
    the constructive reading of general position: every kernel has
    dimension e and every matrix the pipeline inverts is invertible.
    """
    tag = _require_odd(config)
    r, s = tag.r, config.s
    nc = column_normalize(config)
    n, d = config.n, config.d
    if r == 1:
        if s <= 2:
            if config.matrix().rank() != min(n, s * d):
                raise DegenerateConfigError("members are not in general position")
            return
        frame = frame_3e(nc)
        if s == 3:
            return
        if s == 4:
            alphas = _alpha_pairs(nc, frame)
            for k in (7, 8):
                if alphas[k].rank() != tag.e:
                    raise DegenerateConfigError(
                        "block 4 normalization blocks are singular", block=4
                    )
            return
        sigma_data(nc, frame)
        return
    # r >= 2
    if s <= r:
        if config.matrix().rank() != s * d:
            raise DegenerateConfigError("members are not in direct sum")
        return
    if s == r + 1:
        first = hstack([sub.basis for sub in config.subspaces[:r]])
        if first.rank() != r * d:
            raise DegenerateConfigError("the first r members are not in direct sum")
        nullspace_component(nc, list(range(1, r + 1)), r + 1)
        return
    frame = frame_odd(nc)
    red = reduce_odd(config, frame)
    if red.a_block(1).rank() != tag.e:
        raise DegenerateConfigError("a-block 1 is singular", block=r + 1)
    for k, name in ((1, "c-block (1, r+2)"), (2, "c-block (2, r+2)"), (2 * r + 1, f"c-block ({2 * r + 1}, r+2)")):
        if red.c_block(r + 2, k).rank() != tag.e:
            raise DegenerateConfigError(f"{name} is singular", block=r + 2)
    letters_odd(red)


def invariants(config: Config, max_len: int | None = None) -> InvariantVector:
    """Trace-invariant vector of an odd-multiple configuration.

    Empty in the almost-homogeneous ranges: s <= 4 for r = 1; s <= r+1
    always; and s = r+2 when r = 2.  Otherwise dispatches to the r = 1 or
    r >= 2 letter pipeline; letters are e x e, so words run up to length
    min(max_len, 2**e - 1).
    """
    tag = _require_odd(config)
    r, e, s = tag.r, tag.e, config.s
    trivial = (r == 1 and s <= 4) or s <= r + 1 or (r == 2 and s == r + 2)
    if trivial:
        return build_vector(tag, config.n, config.d, s, [], [], e, max_len)
    if r == 1:
        nc = column_normalize(config)
        letters = sigma_data(nc, frame_3e(nc))
    else:
        nc = column_normalize(config)
        letters = letters_odd(reduce_odd(config, frame_odd(nc)))
    return build_vector(
        tag, config.n, config.d, s, letters.ids(), letters.mats(), e, max_len
    )
