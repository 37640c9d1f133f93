"""Pauli-string algebra and qubit encodings of basis-space operators.

Conventions: qubit 0 is the least significant bit of the computational
index; ``letters[q]`` is the single-qubit Pauli acting on qubit q, so the
dense form of a string is ``kron(P[n-1], ..., P[1], P[0])``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

COEFF_CUTOFF = 1e-14

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-qubit products: (a, b) -> (phase, letter) with a*b = phase*letter
_MUL_1Q = {}
for _a in "IXYZ":
    for _b in "IXYZ":
        _m = _PAULI_1Q[_a] @ _PAULI_1Q[_b]
        for _c in "IXYZ":
            for _ph in (1, -1, 1j, -1j):
                if np.allclose(_m, _ph * _PAULI_1Q[_c]):
                    _MUL_1Q[(_a, _b)] = (_ph, _c)
del _a, _b, _c, _m, _ph


@dataclass(frozen=True)
class PauliString:
    coeff: complex
    letters: str


class PauliSum:
    """Weighted sum of Pauli strings over a fixed qubit register.

    Terms are kept merged (no duplicate letter strings) and coefficients
    below ``COEFF_CUTOFF`` are dropped.  Instances are immutable by
    convention; algebra returns new sums.
    """

    def __init__(self, n_qubits, terms):
        self.n_qubits = int(n_qubits)
        merged = {}
        for letters, coeff in (terms.items() if isinstance(terms, dict) else terms):
            if len(letters) != self.n_qubits:
                raise ValueError(
                    f"letter string {letters!r} does not match register size {self.n_qubits}"
                )
            merged[letters] = merged.get(letters, 0.0) + complex(coeff)
        self._terms = {
            s: c for s, c in sorted(merged.items()) if abs(c) > COEFF_CUTOFF
        }

    @property
    def terms(self):
        return [PauliString(c, s) for s, c in self._terms.items()]

    def items(self):
        return list(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, letters):
        return self._terms.get(letters, 0.0)

    def dagger(self) -> "PauliSum":
        return PauliSum(self.n_qubits, {s: np.conj(c) for s, c in self._terms.items()})

    def __add__(self, other):
        if other.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out.get(s, 0.0) + c
        return PauliSum(self.n_qubits, out)

    def scaled(self, factor) -> "PauliSum":
        return PauliSum(self.n_qubits, {s: factor * c for s, c in self._terms.items()})

    def to_matrix(self) -> np.ndarray:
        dim = 2**self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for s, c in self._terms.items():
            out += c * _string_matrix(s)
        return out

    def to_json(self) -> str:
        return json.dumps(
            [
                {"coeff_re": c.real, "coeff_im": c.imag, "letters": s}
                for s, c in self._terms.items()
            ]
        )

    @classmethod
    def from_json(cls, text, n_qubits=None):
        entries = json.loads(text)
        if not entries and n_qubits is None:
            raise ValueError("empty dump needs an explicit register size")
        n = n_qubits if n_qubits is not None else len(entries[0]["letters"])
        return cls(
            n, {e["letters"]: e["coeff_re"] + 1j * e["coeff_im"] for e in entries}
        )

    def __repr__(self):
        return f"PauliSum(n_qubits={self.n_qubits}, terms={len(self)})"


def identity_sum(n_qubits) -> PauliSum:
    return PauliSum(n_qubits, {"I" * n_qubits: 1.0})


def _string_matrix(letters):
    # letters[0] acts on qubit 0 = LSB, hence reversed kron order
    out = np.array([[1.0 + 0j]])
    for ch in letters:
        out = np.kron(_PAULI_1Q[ch], out)
    return out


def string_masks(letters):
    """(x_mask, z_mask, phase) so that P|k> = phase * (-1)^popcount(k & z) |k ^ x>."""
    x = z = 0
    n_y = 0
    for q, ch in enumerate(letters):
        if ch in ("X", "Y"):
            x |= 1 << q
        if ch in ("Z", "Y"):
            z |= 1 << q
        if ch == "Y":
            n_y += 1
    return x, z, 1j**n_y


def pauli_decompose(matrix) -> PauliSum:
    """Expand a square matrix in the Pauli basis, ``c_P = Tr(P M) / 2^n``.

    The reconstruction ``sum c_P P`` is exact.  Dimension must be a power
    of two (zero-pad first otherwise).
    """
    matrix = np.asarray(matrix, dtype=complex)
    dim = matrix.shape[0]
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("need a square matrix")
    n = int(dim - 1).bit_length() if dim > 1 else 1
    if 2**n != dim or dim < 2:
        raise ValueError(
            f"dimension {dim} is not a power of two; zero-pad the matrix first"
        )
    ks = np.arange(dim)
    # Walsh matrix W[z, k] = (-1)^popcount(k & z)
    walsh = np.empty((dim, dim))
    for z in ks:
        walsh[z] = 1 - 2 * (np.bitwise_count(ks & z).astype(np.int64) & 1)
    terms = {}
    for x in ks:
        col = matrix[ks, ks ^ x]  # M[k, k^x]
        coeffs = walsh @ col / dim
        for z in ks:
            c = coeffs[z]
            if abs(c) <= COEFF_CUTOFF:
                continue
            # with P = i^{n_y} X^x Z^z, Tr(P M)/2^n = i^{n_y} * coeffs[z]
            n_y = (int(x) & int(z)).bit_count()
            terms[_letters_from_masks(int(x), int(z), n)] = (1j**n_y) * c
    return PauliSum(n, terms)


def _letters_from_masks(x, z, n):
    return "".join("IXZY"[((x >> q) & 1) + 2 * ((z >> q) & 1)] for q in range(n))


def pauli_multiply(a: PauliSum, b: PauliSum) -> PauliSum:
    """Product of two sums, merging duplicates with phase tracking."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("register size mismatch")
    out = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            phase = 1.0 + 0j
            letters = []
            for la, lb in zip(sa, sb):
                ph, lc = _MUL_1Q[(la, lb)]
                phase *= ph
                letters.append(lc)
            key = "".join(letters)
            out[key] = out.get(key, 0.0) + ca * cb * phase
    return PauliSum(a.n_qubits, out)


def encode_onehot_jw(h) -> PauliSum:
    """One-hot / Jordan-Wigner image of the one-body operator ``sum h_ij a_i+ a_j``.

    One qubit per basis state: ``h_ii -> h_ii (I - Z_i)/2`` and, for i < j,
    ``h_ij -> (h_ij/2)(X_i Z ... Z X_j + Y_i Z ... Z Y_j)`` (h complex
    symmetric).  Restricted to one-hot computational states this
    reproduces h; the rest of the register hosts unphysical sectors.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    terms = {}

    def add(letters, coeff):
        terms[letters] = terms.get(letters, 0.0) + coeff

    iden = ["I"] * n
    for i in range(n):
        add("".join(iden), 0.5 * h[i, i])
        s = iden.copy()
        s[i] = "Z"
        add("".join(s), -0.5 * h[i, i])
    for i in range(n):
        for j in range(i + 1, n):
            if abs(h[i, j]) <= COEFF_CUTOFF:
                continue
            for op in ("X", "Y"):
                s = iden.copy()
                s[i] = op
                s[j] = op
                for q in range(i + 1, j):
                    s[q] = "Z"
                add("".join(s), 0.5 * h[i, j])
    return PauliSum(n, terms)


def gray_code(k: int) -> int:
    """Binary-reflected Gray code word of index k."""
    return k ^ (k >> 1)


def encode_gray(h) -> PauliSum:
    """Gray-code image of h on ``ceil(log2 N)`` qubits.

    Basis index k is stored in the register as the Gray word g(k); h is
    zero-padded to the next power of two, so padded directions are exact
    zero eigenvectors of the encoded operator.
    """
    h = np.asarray(h, dtype=complex)
    n_basis = h.shape[0]
    n = max(1, int(np.ceil(np.log2(max(n_basis, 2)))))
    dim = 2**n
    padded = np.zeros((dim, dim), dtype=complex)
    padded[:n_basis, :n_basis] = h
    perm = np.array([gray_code(k) for k in range(dim)])
    encoded = np.zeros_like(padded)
    encoded[np.ix_(perm, perm)] = padded
    return pauli_decompose(encoded)


def hermitianize(h_sum: PauliSum, energy: complex, side: str = "right") -> PauliSum:
    """Hermitian cost operator whose expectation vanishes at an eigenpair.

    ``right``: (H+ - E*)(H - E) = H+H - E* H - E H+ + |E|^2; minimising its
    expectation yields right eigenvectors.  ``left`` swaps the factors and
    targets left eigenvectors.  All coefficients of the result are real.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    energy = complex(energy)
    hd = h_sum.dagger()
    first, second = (hd, h_sum) if side == "right" else (h_sum, hd)
    prod = pauli_multiply(first, second)
    # both variants share the linear part -E H+ - E* H
    linear = hd.scaled(-energy) + h_sum.scaled(-np.conj(energy))
    const = identity_sum(h_sum.n_qubits).scaled(abs(energy) ** 2)
    return prod + linear + const
