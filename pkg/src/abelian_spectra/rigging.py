"""Generalized eigenvectors and spectral resolution of quotient representations.

Starting from a diagonal model and a nowhere-vanishing cyclic amplitude
xi on its support, the induced positive-type function is assembled; the
quotient representation of that function admits one generalized
eigenvector per support character.  Each eigenvector is an antilinear
functional on test functions whose quotient coordinate form is a unit
eigenvector, so the weight-1 counting measure resolves both the identity
and every group operator.

Orientation note: the quotient form pairs a test function with the
transform of translates, which evaluates Fourier data at the inverse
character.  The functional of the eigenvector labelled chi therefore
reads f -> weight * conj(F(chi^{-1})) with F the transform of f; all
reconstruction identities below hold exactly in this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DualFunction, GroupFunction, fourier
from .errors import (
    GroupMismatchError,
    InconsistencyError,
    NotCyclicError,
    SupportError,
)
from .gns import GNSSpace
from .groups import Character, Element, Group
from .representations import DiagonalModel

WEIGHT_FLOOR = 1e-12
IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class GeneralizedEigenvector:
    """Eigenvector-functional attached to one support character.

    ``weight`` is the modulus of the cyclic amplitude at the character;
    ``coords`` is the unit quotient vector representing the functional.
    """

    character: Character
    weight: float
    coords: np.ndarray

    def act(self, f: GroupFunction) -> complex:
        """Antilinear action: weight * conj(transform of f at chi^{-1})."""
        group = f.group
        j = group.character_index(group.neg_character(self.character))
        return complex(self.weight * np.conj(fourier(f).values[j]))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Complete system of generalized eigenvectors of a quotient representation."""

    group: Group
    support: tuple[Character, ...]
    eigenvectors: tuple[GeneralizedEigenvector, ...]
    nu: dict
    identity_residual: float

    def eigenvector(self, chi: Character) -> GeneralizedEigenvector:
        for vec in self.eigenvectors:
            if vec.character == chi:
                return vec
        raise SupportError(f"character {chi.coords} is outside the decomposition support")


def _support_of(xi: DualFunction, weight_floor: float) -> list[Character]:
    group = xi.group
    return [chi for chi, v in zip(group.characters, xi.values)
            if abs(v) > weight_floor]


def phi_from_cyclic(model: DiagonalModel, xi: DualFunction, *,
                    weight_floor: float = WEIGHT_FLOOR) -> GroupFunction:
    """Positive-type function of the cyclic vector xi in a diagonal model.

    phi(g) = sum over the model support of <g|chi> |xi(chi)|^2 with the
    weight-1 counting measure.  Raises NotCyclicError when xi vanishes on
    a support character (it would not be cyclic there).
    """
    group = model.group
    if xi.group != group:
        raise GroupMismatchError("cyclic amplitude lives on a different group")
    values = np.zeros(group.size, dtype=complex)
    for s, chi in enumerate(model.support):
        amp = xi.values[group.character_index(chi)]
        if abs(amp) <= weight_floor:
            raise NotCyclicError(
                f"cyclic amplitude vanishes at support character {chi.coords} "
                f"(|xi| = {abs(amp):.3e})")
        values += (abs(amp) ** 2) * model.table[:, s]
    return GroupFunction(group, values)


def _eigenvector_coords(space: GNSSpace, chi: Character) -> np.ndarray:
    """Unit quotient coordinates of the eigenvector labelled chi.

    The representing vector of the functional is a positive multiple of
    Q^dagger applied to the inverse character's coordinate vector; the
    quotient metric normalises it to unit length exactly.
    """
    group = space.group
    j = group.character_index(group.neg_character(chi))
    t = group.pairing_block(j, j + 1)[0]
    v = space.quotient_basis.conj().T @ t
    norm = float(np.linalg.norm(v))
    if norm <= 0:
        raise InconsistencyError(
            f"character {chi.coords} has no component in the quotient")
    return v / norm


def build_decomposition(space: GNSSpace, xi: DualFunction, *,
                        tol: float = IDENTITY_TOL,
                        weight_floor: float = WEIGHT_FLOOR,
                        rng: np.random.Generator | None = None,
                        check_pairs: int = 8) -> SpectralDecomposition:
    """Generalized-eigenvector system of the quotient space of phi(xi).

    One eigenvector per character where xi does not vanish; their count
    must equal the quotient rank (InconsistencyError otherwise).  The
    inner-product identity <f|h>_phi = sum_chi conj(F(chi^{-1})) H(chi^{-1})
    |xi(chi)|^2 is verified on random pairs within ``tol``.
    """
    group = space.group
    if xi.group != group:
        raise GroupMismatchError("cyclic amplitude lives on a different group")
    support = _support_of(xi, weight_floor)
    if len(support) != space.rank:
        raise InconsistencyError(
            f"cyclic amplitude is supported on {len(support)} characters but the "
            f"quotient rank is {space.rank}")

    eigenvectors = []
    for chi in support:
        weight = float(abs(xi.values[group.character_index(chi)]))
        coords = _eigenvector_coords(space, chi)
        coords.setflags(write=False)
        eigenvectors.append(GeneralizedEigenvector(
            character=chi, weight=weight, coords=coords))

    residual = _identity_residual(space, eigenvectors,
                                  rng if rng is not None else np.random.default_rng(0),
                                  check_pairs)
    if residual > tol:
        raise InconsistencyError(
            f"inner-product identity residual {residual:.3e} exceeds {tol:.1e}; "
            "the quotient space does not match the cyclic amplitude")

    return SpectralDecomposition(
        group=group,
        support=tuple(support),
        eigenvectors=tuple(eigenvectors),
        nu={chi: 1.0 for chi in support},
        identity_residual=residual,
    )


def _identity_residual(space: GNSSpace,
                       eigenvectors: list[GeneralizedEigenvector],
                       rng: np.random.Generator, check_pairs: int) -> float:
    """Worst deviation of <f|h>_phi from sum_chi F_chi(f) conj(F_chi(h)).

    Deliberately evaluated through the functionals' own action so that a
    corrupted eigenvector formula is caught here, not compensated for.
    """
    group = space.group
    worst = 0.0
    for _ in range(check_pairs):
        f = GroupFunction(group, rng.standard_normal(group.size)
                          + 1j * rng.standard_normal(group.size))
        h = GroupFunction(group, rng.standard_normal(group.size)
                          + 1j * rng.standard_normal(group.size))
        lhs = complex(f.values.conj() @ (space.gram @ h.values))
        rhs = sum(vec.act(f) * np.conj(vec.act(h)) for vec in eigenvectors)
        worst = max(worst, abs(lhs - rhs))
    return worst


def reconstruct_operator(decomp: SpectralDecomposition, space: GNSSpace,
                         g: Element) -> np.ndarray:
    """Resolve the group operator through the eigenvector system.

    Returns sum_chi <g|chi> |F_chi><F_chi| nu(chi) in quotient
    coordinates; equals the quotient image of g.
    """
    group = space.group
    out = np.zeros((space.rank, space.rank), dtype=complex)
    for vec in decomp.eigenvectors:
        out += group.pairing(g, vec.character) * np.outer(vec.coords, vec.coords.conj())
    return out


def eigen_residual(decomp: SpectralDecomposition, space: GNSSpace,
                   g: Element, chi: Character) -> float:
    """|| pi(g)^dagger F_chi - conj(<g|chi>) F_chi || in quotient coordinates.

    The adjoint action extends the representation to the eigenvector
    functionals; its eigenvalue at chi is the conjugated pairing.
    """
    vec = decomp.eigenvector(chi)
    op = space.operator(g)
    eigval = np.conj(space.group.pairing(g, chi))
    return float(np.linalg.norm(op.conj().T @ vec.coords - eigval * vec.coords))


@dataclass(frozen=True)
class IntertwinerResult:
    """Unitary from quotient coordinates to the diagonal model's support."""

    matrix: np.ndarray
    unitarity_residual: float
    intertwining_residual: float


def intertwiner(space: GNSSpace, model: DiagonalModel, xi: DualFunction, *,
                weight_floor: float = WEIGHT_FLOOR) -> IntertwinerResult:
    """Unitary W with W pi_phi(g) W^dagger = diag(<g|chi>) on the model support.

    Rows of W are the eigenvector coordinates, so W maps the class of f to
    its weighted transform across the support.  Raises InconsistencyError
    on a rank mismatch and NotCyclicError when xi vanishes on the support.
    """
    group = space.group
    if model.group != group or xi.group != group:
        raise GroupMismatchError("quotient, model, and amplitude must share one group")
    if len(model.support) != space.rank:
        raise InconsistencyError(
            f"diagonal model has {len(model.support)} support characters but the "
            f"quotient rank is {space.rank}")
    for chi in model.support:
        if abs(xi.values[group.character_index(chi)]) <= weight_floor:
            raise NotCyclicError(
                f"cyclic amplitude vanishes at support character {chi.coords}")

    rows = [np.conj(_eigenvector_coords(space, chi)) for chi in model.support]
    W = np.array(rows)
    unitarity = float(np.linalg.norm(W.conj().T @ W - np.eye(space.rank)))

    worst = 0.0
    for i, g in enumerate(group.elements):
        lhs = W @ space.operator(g)
        rhs = np.diag(model.table[i]) @ W
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return IntertwinerResult(matrix=W, unitarity_residual=unitarity,
                             intertwining_residual=worst)
