"""Number theory helpers: primality, prime sampling, modular square roots."""

from __future__ import annotations

import functools
import random

from .errors import NonResidueError, ParameterError

MR_ROUNDS = 64

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229,
    233, 239, 241, 251,
)


@functools.lru_cache(maxsize=4096)
def is_probable_prime(n: int, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin test.

    The first witness is 2; the rest come from a generator seeded by ``n``
    itself, so the answer is a pure function of ``n`` and never disturbs a
    caller's RNG stream.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    s, t = 0, n - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    witnesses = None
    for k in range(rounds):
        if k == 0:
            a = 2
        else:
            if witnesses is None:
                witnesses = random.Random(n)
            a = witnesses.randrange(2, n - 1)
        x = pow(a, t, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime_3mod4(bits: int, rng: random.Random, max_tries: int = 100_000) -> int:
    """Sample a probable prime of exactly ``bits`` bits with p = 3 (mod 4)."""
    if bits < 2:
        raise ParameterError(f"cannot sample a {bits}-bit prime")
    if bits == 2:
        return 3
    top = 1 << (bits - 1)
    for _ in range(max_tries):
        candidate = rng.getrandbits(bits) | top | 3
        if is_probable_prime(candidate):
            return candidate
    raise ParameterError(f"no {bits}-bit prime = 3 (mod 4) found in {max_tries} draws")


def sqrt_mod_p(a: int, p: int) -> int:
    """Square root of ``a`` modulo a prime ``p = 3 (mod 4)``.

    Uses ``a^((p+1)/4)``; the candidate is squared back and a
    :class:`NonResidueError` is raised if ``a`` is not a quadratic residue.
    """
    if p % 4 != 3:
        raise ParameterError(f"modulus {p} is not 3 (mod 4)")
    if not 0 <= a < p:
        raise ValueError(f"residue {a} not reduced modulo {p}")
    r = pow(a, (p + 1) // 4, p)
    if r * r % p != a:
        raise NonResidueError(f"{a} is not a square modulo {p}")
    return r
