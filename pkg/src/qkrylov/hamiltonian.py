"""Qubit Pauli operators and Hamiltonians assembled from weighted Pauli
strings, including the seven builtin benchmark systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_QUBITS = 12  # dense 4096-dim cap

PAULI_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def _validate_pauli_string(string: str, n_qubits: int) -> None:
    if len(string) != n_qubits:
        raise ValueError(
            f"Pauli string {string!r} has length {len(string)}, expected {n_qubits}"
        )
    bad = set(string) - set("IXYZ")
    if bad:
        raise ValueError(f"Pauli string {string!r} contains invalid letters {sorted(bad)}")


@dataclass(frozen=True)
class HamiltonianSpec:
    """Symbolic Hamiltonian: a real-weighted sum of Pauli strings on
    n_qubits qubits (real coefficients guarantee Hermiticity)."""

    n_qubits: int
    terms: tuple[tuple[float, str], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must lie in [1, {MAX_QUBITS}], got {self.n_qubits}")
        normalized = []
        for coeff, string in self.terms:
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"coefficient {coeff!r} is not finite")
            _validate_pauli_string(string, self.n_qubits)
            normalized.append((coeff, string))
        object.__setattr__(self, "terms", tuple(normalized))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


def pauli_string_matrix(string: str) -> np.ndarray:
    """Dense matrix of a tensor product of single-qubit Paulis, one letter
    per qubit, leftmost letter acting on qubit 1."""
    _validate_pauli_string(string, len(string))
    if len(string) > MAX_QUBITS:
        raise ValueError(f"string length {len(string)} exceeds the {MAX_QUBITS}-qubit cap")
    matrix = np.array([[1.0 + 0.0j]])
    for letter in string:
        matrix = np.kron(matrix, PAULI_MATRICES[letter])
    return matrix


def single_site_pauli(letter: str, site: int, n_qubits: int) -> np.ndarray:
    """Pauli operator on one site, identity elsewhere (site is 1-based)."""
    if letter not in ("X", "Y", "Z"):
        raise ValueError(f"letter must be one of X, Y, Z, got {letter!r}")
    if not 1 <= site <= n_qubits:
        raise ValueError(f"site {site} out of range 1..{n_qubits}")
    string = "I" * (site - 1) + letter + "I" * (n_qubits - site)
    return pauli_string_matrix(string)


def build_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """Dense Hermitian matrix of a HamiltonianSpec."""
    matrix = np.zeros((spec.dim, spec.dim), dtype=complex)
    for coeff, string in spec.terms:
        matrix += coeff * pauli_string_matrix(string)
    return matrix


def _site_string(n_qubits: int, letters: dict[int, str]) -> str:
    chars = ["I"] * n_qubits
    for site, letter in letters.items():
        chars[site - 1] = letter
    return "".join(chars)


def _x_field(sites: tuple[int, ...]) -> HamiltonianSpec:
    terms = [(0.5, _site_string(4, {i: "X"})) for i in sites]
    return HamiltonianSpec(4, tuple(terms))


def _ising(couplings: dict[tuple[int, int], float]) -> HamiltonianSpec:
    terms = [(j, _site_string(4, {a: "X", b: "X"})) for (a, b), j in couplings.items()]
    terms += [(0.5, _site_string(4, {i: "Z"})) for i in range(1, 5)]
    return HamiltonianSpec(4, tuple(terms))


BUILTIN_HAMILTONIANS: dict[str, HamiltonianSpec] = {
    "H1": _x_field((1,)),
    "H2": _x_field((1, 2)),
    "H3": _x_field((1, 2, 3)),
    "H4": _x_field((1, 2, 3, 4)),
    "HI1": _ising({(1, 2): 0.5, (1, 3): 0.5, (2, 3): 0.5}),
    "HI2": _ising({(1, 2): 0.4, (1, 3): 0.5, (1, 4): 0.5, (2, 3): 0.5, (2, 4): 0.5, (3, 4): 0.5}),
    "HI3": _ising({(1, 2): 0.35, (1, 3): 0.4, (1, 4): 0.45, (2, 3): 0.6, (2, 4): 0.55, (3, 4): 0.5}),
}

BUILTIN_ORDER = ("H1", "H2", "H3", "H4", "HI1", "HI2", "HI3")

# grade of the sampled space = number of pairwise distinct eigenvalues
EXPECTED_KRYLOV_DIMENSION: dict[str, int] = {
    "H1": 2,
    "H2": 3,
    "H3": 4,
    "H4": 5,
    "HI1": 9,
    "HI2": 16,
    "HI3": 15,
}


def canonical_name(name: str) -> str:
    """Normalize a builtin Hamiltonian name ('h_i2' -> 'HI2')."""
    return name.replace("_", "").replace("-", "").strip().upper()


def display_name(name: str) -> str:
    """Underscored display form used in report rows ('HI2' -> 'H_I2')."""
    key = canonical_name(name)
    if key.startswith("HI"):
        return f"H_I{key[2:]}"
    return f"H_{key[1:]}"


def builtin_hamiltonian(name: str) -> HamiltonianSpec:
    """Return the spec of a builtin system by name (H1..H4, HI1..HI3)."""
    key = canonical_name(name)
    if key not in BUILTIN_HAMILTONIANS:
        valid = ", ".join(BUILTIN_ORDER)
        raise ValueError(f"unknown Hamiltonian {name!r}; valid names: {valid}")
    return BUILTIN_HAMILTONIANS[key]


def parse_hamiltonian_spec(text: str) -> HamiltonianSpec:
    """Parse the Hamiltonian spec text format.

    Blank lines and lines starting with '#' are ignored; every other line is
    ``<coefficient> <pauli-string>`` (e.g. ``0.5 XIII``). All strings must
    share one length, which defines the qubit count.
    """
    terms: list[tuple[float, str]] = []
    length: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<coefficient> <pauli-string>', got {raw!r}")
        try:
            coeff = float(parts[0])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse coefficient {parts[0]!r}") from None
        string = parts[1].upper()
        if length is None:
            length = len(string)
        elif len(string) != length:
            raise ValueError(
                f"line {lineno}: string length {len(string)} differs from earlier length {length}"
            )
        _validate_pauli_string(string, len(string))
        terms.append((coeff, string))
    if not terms:
        raise ValueError("spec contains no terms")
    return HamiltonianSpec(n_qubits=length, terms=tuple(terms))


def load_hamiltonian_spec(path: str | Path) -> HamiltonianSpec:
    """Read and parse a Hamiltonian spec file (UTF-8)."""
    return parse_hamiltonian_spec(Path(path).read_text(encoding="utf-8"))
