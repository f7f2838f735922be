"""Private-key recovery from a Cao-Li public key.

The public matrix factors as B = P^T diag(lambda) P with P = P1 P2 unit lower
triangular, and that factorisation is unique. ``algorithm_a`` peels it off by
eliminating rows from the bottom up, which recovers every lambda_i and P
exactly. Each prime p_i then divides

    d_i = gcd(lambda_1, ..., lambda_i - 1, ..., lambda_n),

and in practice d_i is p_i itself or a small multiple of it. With P and the
primes in hand, ciphertexts decrypt exactly as the key owner would.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from . import exactmat as em
from .cryptocore import PublicKey, decrypt_with
from .errors import InexactDivisionError, InvalidCiphertextError, MalformedPublicKeyError
from .exactmat import IntMatrix, IntVector
from .numtheory import is_probable_prime

DEFAULT_MAX_COFACTOR = 1000


class Status(enum.Enum):
    EXACT = "exact"
    COFACTOR = "cofactor"
    FAILED = "failed"


@dataclass(frozen=True)
class PrimeCandidate:
    gcd_value: int
    p_hat: int | None = None
    cofactor: int | None = None

    @property
    def status(self) -> Status:
        if self.p_hat is None:
            return Status.FAILED
        return Status.EXACT if self.cofactor == 1 else Status.COFACTOR

    def describe(self) -> str:
        if self.status is Status.COFACTOR:
            return f"cofactor({self.cofactor})"
        return self.status.value


@dataclass(frozen=True)
class RecoveredKey:
    lambdas: tuple[int, ...]
    p_matrix: IntMatrix
    candidates: tuple[PrimeCandidate, ...]

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def failed_indices(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.candidates) if c.p_hat is None)

    @property
    def complete(self) -> bool:
        return not self.failed_indices

    @property
    def primes(self) -> tuple[int, ...] | None:
        if not self.complete:
            return None
        return tuple(c.p_hat for c in self.candidates)


@dataclass(frozen=True)
class BreakFailure:
    """Marker for a ciphertext the attack could not decrypt.

    ``failed_indices`` are 0-based; the string form prints them 1-based.
    """

    failed_indices: tuple[int, ...]
    reason: str

    def __str__(self) -> str:
        if self.failed_indices:
            return "FAIL indices=" + ",".join(str(i + 1) for i in self.failed_indices)
        return f"FAIL {self.reason}"


def algorithm_a(b: IntMatrix) -> tuple[tuple[int, ...], IntMatrix]:
    """Factor a public matrix into (lambdas, P) with B = P^T diag(lambdas) P.

    Step 1 walks i = n-1 .. 1 and, for j = n .. i+1, replaces row i by
    row_i - (b_ji / b_jj) row_j. Rows below i are already reduced to
    lambda_j p_j, so each quotient is the integer p_ji. Step 2 reads
    lambda_i off the diagonal and divides it out of row i.

    Every quotient must be exact; a remainder, a zero pivot or a result that
    does not reproduce B raises :class:`MalformedPublicKeyError`.
    """
    if not b.is_symmetric():
        raise MalformedPublicKeyError("public matrix is not square and symmetric")
    n = b.n_rows
    rows = [list(r) for r in b.rows()]

    # Step 1 (0-based indices; the text above is 1-based)
    for i in range(n - 2, -1, -1):
        for j in range(n - 1, i, -1):
            pivot = rows[j][j]
            if pivot == 0:
                raise MalformedPublicKeyError(f"inexact division: zero pivot at row {j + 1}")
            q, r = divmod(rows[j][i], pivot)
            if r:
                raise MalformedPublicKeyError(
                    f"inexact division: b[{j + 1},{i + 1}] is not a multiple of b[{j + 1},{j + 1}]"
                )
            if q:
                row_j = rows[j]
                rows[i] = [a - q * c for a, c in zip(rows[i], row_j)]

    # Step 2
    lambdas = []
    p_rows = []
    for i in range(n):
        lam = rows[i][i]
        try:
            p_rows.append(em.exact_div_row(rows[i], lam))
        except InexactDivisionError as exc:
            raise MalformedPublicKeyError(f"inexact division in row {i + 1}: {exc}") from exc
        lambdas.append(lam)

    p = IntMatrix.from_rows(p_rows)
    if not p.is_unit_lower_triangular() or any(v < 0 for v in p.entries):
        raise MalformedPublicKeyError("recovered P is not unit lower triangular with non-negative entries")
    if em.transpose(p) @ IntMatrix.diag(lambdas) @ p != b:
        raise MalformedPublicKeyError("recovered factors do not reproduce the public matrix")
    return tuple(lambdas), p


def recover_prime_candidates(lambdas: Sequence[int]) -> tuple[int, ...]:
    """d_i = gcd of all lambdas with lambda_i replaced by lambda_i - 1."""
    out = []
    for i, lam in enumerate(lambdas):
        out.append(math.gcd(lam - 1, *lambdas[:i], *lambdas[i + 1:]))
    return tuple(out)


def refine_candidate(
    gcd_value: int,
    lambdas: Sequence[int],
    index: int,
    max_cofactor: int = DEFAULT_MAX_COFACTOR,
) -> PrimeCandidate:
    """Strip a small cofactor from ``gcd_value`` to expose the prime.

    Tries c = 1, 2, ..., max_cofactor in order; the first quotient q = d/c
    that is a probable prime, is 3 (mod 4), and satisfies
    lambda_j = delta_ij (mod q) for every j is accepted.
    """
    if gcd_value < 2:
        return PrimeCandidate(gcd_value)
    for c in range(1, min(max_cofactor, gcd_value) + 1):
        q, r = divmod(gcd_value, c)
        if r or q % 4 != 3:
            continue
        if not all(lam % q == (1 if j == index else 0) for j, lam in enumerate(lambdas)):
            continue
        if is_probable_prime(q):
            return PrimeCandidate(gcd_value, q, c)
    return PrimeCandidate(gcd_value)


def recover_key(pk: PublicKey, max_cofactor: int = DEFAULT_MAX_COFACTOR) -> RecoveredKey:
    lambdas, p = algorithm_a(pk.b_matrix)
    gcds = recover_prime_candidates(lambdas)
    candidates = tuple(
        refine_candidate(g, lambdas, i, max_cofactor) for i, g in enumerate(gcds)
    )
    return RecoveredKey(lambdas, p, candidates)


def decrypt_recovered(
    key: RecoveredKey, pk: PublicKey, y: int
) -> IntVector | BreakFailure:
    """Decrypt one ciphertext with a recovered key, validated against pk only."""
    if not key.complete:
        return BreakFailure(key.failed_indices, "prime recovery incomplete")
    try:
        return decrypt_with(key.p_matrix, key.primes, pk.b_matrix, pk.d, y)
    except InvalidCiphertextError as exc:
        return BreakFailure((), str(exc))


def full_break(
    pk: PublicKey,
    ciphertexts: Sequence[int] = (),
    max_cofactor: int = DEFAULT_MAX_COFACTOR,
) -> tuple[RecoveredKey, list[IntVector | BreakFailure]]:
    """Recover the key from ``pk`` and decrypt each ciphertext with it.

    Results keep the input order. A ciphertext that cannot be decrypted gets a
    :class:`BreakFailure` rather than an exception; a public matrix that is not
    a Cao-Li key raises :class:`MalformedPublicKeyError`.
    """
    key = recover_key(pk, max_cofactor)
    return key, [decrypt_recovered(key, pk, y) for y in ciphertexts]
