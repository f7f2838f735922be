"""Key generation, encryption and decryption for the Cao-Li scheme.

A private key is a list of primes p_1 < ... < p_n (all 3 mod 4) and two unit
lower-triangular matrices P1, P2 with small non-negative entries. With the CRT
basis lambda_i (1 mod p_i, 0 mod every other prime) the public key is

    B = P2^T P1^T diag(lambda) P1 P2,

and a message x with 0 <= x_i <= d encrypts to the single integer x B x^T.
Writing z = x (P1 P2)^T gives y = sum_k lambda_k z_k^2, hence z_k^2 = y mod
p_k; the entry cap keeps every z_k below p_k / 2 so the root is unique.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exactmat as em
from .errors import (
    DimensionError,
    InvalidCiphertextError,
    InvalidMessageError,
    NonResidueError,
    ParameterError,
    StructureError,
)
from .exactmat import IntMatrix, IntVector
from .numtheory import is_probable_prime, random_prime_3mod4, sqrt_mod_p


@dataclass(frozen=True)
class SchemeParams:
    n: int
    d: int = 1
    min_prime_bits: int = 64
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"block length n must be >= 1, got {self.n}")
        if self.d < 1:
            raise ParameterError(f"message bound d must be >= 1, got {self.d}")
        if self.min_prime_bits < 8:
            raise ParameterError(f"min_prime_bits must be >= 8, got {self.min_prime_bits}")


@dataclass(frozen=True)
class EntryBound:
    """Cap on secret-matrix entries.

    ``beta_squared`` is the exact square of the real bound (a Fraction), and
    ``cap`` is the largest integer strictly below it.
    """

    beta_squared: Fraction
    cap: int

    @property
    def beta(self) -> float:
        # display only; nothing downstream uses the float
        return math.sqrt(self.beta_squared)


@dataclass(frozen=True)
class PublicKey:
    b_matrix: IntMatrix
    d: int

    def __post_init__(self) -> None:
        if not self.b_matrix.is_symmetric():
            raise StructureError("public matrix B must be square and symmetric")
        if any(v < 0 for v in self.b_matrix.entries):
            raise StructureError("public matrix B must have non-negative entries")
        if self.d < 1:
            raise ParameterError(f"message bound d must be >= 1, got {self.d}")

    @property
    def n(self) -> int:
        return self.b_matrix.n_rows


@dataclass(frozen=True)
class PrivateKey:
    primes: tuple[int, ...]
    p1_matrix: IntMatrix
    p2_matrix: IntMatrix
    d: int
    lambdas: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(self.primes))
        n = len(self.primes)
        if n < 1:
            raise ParameterError("need at least one prime")
        for p in self.primes:
            if p % 4 != 3 or not is_probable_prime(p):
                raise ParameterError(f"{p} is not a prime = 3 (mod 4)")
        if any(a >= b for a, b in zip(self.primes, self.primes[1:])):
            raise ParameterError("primes must be strictly ascending")
        cap = compute_beta(self.primes, self.d).cap
        for name, m in (("P1", self.p1_matrix), ("P2", self.p2_matrix)):
            if m.shape != (n, n):
                raise DimensionError(f"{name} must be {n}x{n}, got {m.n_rows}x{m.n_cols}")
            if not m.is_unit_lower_triangular():
                raise StructureError(f"{name} must be unit lower triangular")
            if any(not 0 <= m[i, j] <= cap for i in range(n) for j in range(i)):
                raise StructureError(f"{name} has an entry outside [0, {cap}]")
        object.__setattr__(self, "lambdas", compute_lambdas(self.primes))

    @property
    def n(self) -> int:
        return len(self.primes)

    @cached_property
    def p_matrix(self) -> IntMatrix:
        """The product P = P1 P2."""
        return self.p1_matrix @ self.p2_matrix

    @cached_property
    def public_key(self) -> PublicKey:
        p = self.p_matrix
        b = em.transpose(p) @ IntMatrix.diag(self.lambdas) @ p
        return PublicKey(b, self.d)


def generate_primes(params: SchemeParams, rng: random.Random) -> tuple[int, ...]:
    """Draw n distinct primes = 3 (mod 4) of ``min_prime_bits`` bits, ascending.

    Raises :class:`ParameterError` if the sorted primes do not satisfy
    p_i > i(i+1)d, i.e. the bit length is too small for an entry cap >= 1.
    """
    primes: set[int] = set()
    draws = 0
    while len(primes) < params.n:
        draws += 1
        if draws > 50 * params.n + 1000:
            raise ParameterError(
                f"cannot find {params.n} distinct {params.min_prime_bits}-bit primes; "
                "raise min_prime_bits"
            )
        primes.add(random_prime_3mod4(params.min_prime_bits, rng))
    ordered = tuple(sorted(primes))
    for i, p in enumerate(ordered, start=1):
        if p <= i * (i + 1) * params.d:
            raise ParameterError(
                f"prime p_{i} = {p} does not exceed i(i+1)d = {i * (i + 1) * params.d}; "
                "raise min_prime_bits"
            )
    return ordered


def compute_lambdas(primes: Sequence[int]) -> tuple[int, ...]:
    modulus = math.prod(primes)
    lambdas = []
    for p in primes:
        m = modulus // p
        if math.gcd(m, p) != 1:
            raise ParameterError(f"prime {p} is repeated")
        # 0 < m' < p; for a single prime m = 1 and m' = 1
        lambdas.append(pow(m, -1, p) * m)
    return tuple(lambdas)


def compute_beta(primes: Sequence[int], d: int) -> EntryBound:
    """Entry bound for the secret matrices.

    beta^2 = min_i p_i / (i(i+1)d); the cap M is the largest integer with
    M^2 i(i+1) d < p_i for every i, found with integer square roots.
    """
    if d < 1:
        raise ParameterError(f"message bound d must be >= 1, got {d}")
    beta_sq = min(Fraction(p, i * (i + 1) * d) for i, p in enumerate(primes, start=1))
    cap = min(math.isqrt((p - 1) // (i * (i + 1) * d)) for i, p in enumerate(primes, start=1))
    if cap < 1:
        raise ParameterError(f"entry bound beta = {math.sqrt(beta_sq):.4f} <= 1; primes too small for d = {d}")
    return EntryBound(beta_sq, cap)


def generate_secret_matrix(n: int, cap: int, rng: random.Random) -> IntMatrix:
    if cap < 1:
        raise ParameterError(f"entry cap must be >= 1, got {cap}")
    rows = []
    for i in range(n):
        rows.append([rng.randint(0, cap) if j < i else int(i == j) for j in range(n)])
    return IntMatrix.from_rows(rows)


def keygen(params: SchemeParams) -> tuple[PrivateKey, PublicKey]:
    rng = random.Random(params.rng_seed)
    primes = generate_primes(params, rng)
    cap = compute_beta(primes, params.d).cap
    p1 = generate_secret_matrix(params.n, cap, rng)
    p2 = generate_secret_matrix(params.n, cap, rng)
    sk = PrivateKey(primes, p1, p2, params.d)
    return sk, sk.public_key


def check_message(x: Sequence[int], n: int, d: int) -> IntVector:
    if len(x) != n:
        raise InvalidMessageError(f"message has length {len(x)}, expected {n}")
    for i, v in enumerate(x):
        if not 0 <= v <= d:
            raise InvalidMessageError(f"message entry {i} = {v} is outside [0, {d}]")
    return tuple(int(v) for v in x)


def encrypt(pk: PublicKey, x: Sequence[int]) -> int:
    return em.quadratic_form(check_message(x, pk.n, pk.d), pk.b_matrix)


def recover_z(y: int, primes: Sequence[int]) -> IntVector:
    """Per-prime square roots of y, each taken as the root below p_k / 2."""
    if y < 0:
        raise InvalidCiphertextError("ciphertext must be non-negative")
    z = []
    for p in primes:
        r = sqrt_mod_p(y % p, p)
        z.append(r if 2 * r < p else p - r)
    return tuple(z)


def decrypt_with(p_matrix: IntMatrix, primes: Sequence[int], b_matrix: IntMatrix, d: int, y: int) -> IntVector:
    """Decrypt y given P = P1 P2 and the moduli, then re-encrypt under B as a check.

    Shared by legitimate decryption and by the attack, which supplies the
    recovered P and primes.
    """
    try:
        z = recover_z(y, primes)
    except NonResidueError as exc:
        raise InvalidCiphertextError(f"invalid ciphertext: {exc}") from exc
    x = em.solve_unit_upper(em.transpose(p_matrix), z)
    try:
        x = check_message(x, len(primes), d)
    except InvalidMessageError as exc:
        raise InvalidCiphertextError(f"invalid ciphertext: {exc}") from exc
    if em.quadratic_form(x, b_matrix) != y:
        raise InvalidCiphertextError("invalid ciphertext: re-encryption mismatch")
    return x


def decrypt(sk: PrivateKey, y: int) -> IntVector:
    return decrypt_with(sk.p_matrix, sk.primes, sk.public_key.b_matrix, sk.d, y)
