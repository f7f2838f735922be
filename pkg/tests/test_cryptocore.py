import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from caoli import exactmat as em
from caoli.cryptocore import (
    PrivateKey,
    PublicKey,
    SchemeParams,
    compute_beta,
    compute_lambdas,
    decrypt,
    encrypt,
    generate_primes,
    generate_secret_matrix,
    keygen,
    recover_z,
)
from caoli.errors import (
    InvalidCiphertextError,
    InvalidMessageError,
    ParameterError,
    StructureError,
)
from caoli.exactmat import IntMatrix
from caoli.numtheory import sqrt_mod_p

from .conftest import GOLDEN_B


def brute_cap(primes, d):
    """Largest m with m^2 i(i+1) d < p_i for all i, by upward scan."""
    m = 0
    while all((m + 1) ** 2 * i * (i + 1) * d < p for i, p in enumerate(primes, start=1)):
        m += 1
    return m


def prime_sets(max_n=6):
    pool = [p for p in sympy.primerange(3, 2000)]
    return st.lists(st.sampled_from(pool), min_size=1, max_size=max_n, unique=True).map(sorted)


class TestParams:
    @pytest.mark.parametrize("kw", [dict(n=0), dict(n=2, d=0), dict(n=2, min_prime_bits=7)])
    def test_invalid(self, kw):
        with pytest.raises(ParameterError):
            SchemeParams(**kw)


class TestGeneratePrimes:
    def test_golden_primes_satisfy_constraints(self):
        # (3, 7) cannot be drawn (min_prime_bits >= 8) but must meet the same checks
        for i, p in enumerate((3, 7), start=1):
            assert p % 4 == 3 and p > i * (i + 1) * 1

    def test_single_prime(self):
        (p,) = generate_primes(SchemeParams(1, d=3, min_prime_bits=8), random.Random(0))
        assert p % 4 == 3 and sympy.isprime(p) and p > 2 * 3

    def test_sorted_distinct_over_seeds(self):
        for seed in range(100):
            params = SchemeParams(6, d=2, min_prime_bits=16, rng_seed=seed)
            primes = generate_primes(params, random.Random(seed))
            assert list(primes) == sorted(set(primes))
            assert len(primes) == 6
            for i, p in enumerate(primes, start=1):
                assert p % 4 == 3 and sympy.isprime(p)
                assert p.bit_length() >= 16
                assert p > i * (i + 1) * 2

    def test_too_small_for_bound(self):
        # 8-bit primes are below 256 while i(i+1)d reaches 10*11*10
        with pytest.raises(ParameterError):
            generate_primes(SchemeParams(10, d=10, min_prime_bits=8), random.Random(1))


class TestLambdas:
    def test_golden(self):
        lam = compute_lambdas((3, 7))
        assert lam == (7, 15)
        assert (7 % 3, 7 % 7, 15 % 3, 15 % 7) == (1, 0, 0, 1)

    def test_single_prime(self):
        assert compute_lambdas((11,)) == (1,)

    def test_duplicate_prime(self):
        with pytest.raises(ParameterError):
            compute_lambdas((7, 7))

    @given(prime_sets())
    def test_kronecker_pattern_and_crt_sum(self, primes):
        lam = compute_lambdas(primes)
        modulus = math.prod(primes)
        for i, li in enumerate(lam):
            for j, pj in enumerate(primes):
                assert li % pj == (i == j)
        assert sum(lam) % modulus == 1 % modulus
        # m' lies strictly between 0 and p_i
        for li, p in zip(lam, primes):
            assert 0 < li // (modulus // p) < p


class TestBeta:
    def test_golden(self):
        b = compute_beta((3, 7), 1)
        assert b.beta_squared == Fraction(7, 6)
        assert b.cap == 1 == brute_cap((3, 7), 1)
        assert b.beta == pytest.approx(1.0801, abs=1e-4)

    def test_large_primes_give_large_cap(self):
        assert compute_beta((2**127 - 1,), 1).cap > 2**60

    def test_rejects_beta_le_one(self):
        with pytest.raises(ParameterError):
            compute_beta((3, 5), 1)  # 5 <= 2*3*1

    @given(prime_sets(), st.integers(1, 5))
    def test_cap_matches_brute_force(self, primes, d):
        if brute_cap(primes, d) < 1:
            with pytest.raises(ParameterError):
                compute_beta(primes, d)
            return
        b = compute_beta(primes, d)
        assert b.cap == brute_cap(primes, d)
        assert b.cap ** 2 < b.beta_squared <= (b.cap + 1) ** 2
        for k, p in enumerate(primes, start=1):
            # d M^2 k(k+1)/2 < p_k/2, cleared of fractions
            assert d * b.cap ** 2 * k * (k + 1) < p


class TestSecretMatrix:
    def test_n1(self):
        assert generate_secret_matrix(1, 5, random.Random(0)) == IntMatrix.identity(1)

    def test_n2_cap1_enumeration(self):
        seen = {generate_secret_matrix(2, 1, random.Random(s)).entries for s in range(50)}
        assert seen == {(1, 0, 0, 1), (1, 0, 1, 1)}

    def test_structure(self):
        rng = random.Random(3)
        for _ in range(20):
            m = generate_secret_matrix(6, 9, rng)
            assert m.is_unit_lower_triangular()
            assert all(0 <= m[i, j] <= 9 for i in range(6) for j in range(i))
            assert sympy.Matrix(m.rows()).det() == 1


class TestKeys:
    def test_golden_public_matrix(self, golden_sk):
        p = sympy.Matrix([[1, 0], [1, 1]])
        oracle = p.T * sympy.diag(7, 15) * p
        assert oracle.tolist() == [list(r) for r in GOLDEN_B]
        assert golden_sk.public_key.b_matrix == IntMatrix.from_rows(GOLDEN_B)

    def test_identity_matrices_give_diagonal(self):
        sk = PrivateKey((3, 7), IntMatrix.identity(2), IntMatrix.identity(2), 1)
        assert sk.public_key.b_matrix == IntMatrix.diag(compute_lambdas((3, 7)))

    def test_private_key_validation(self):
        eye = IntMatrix.identity(2)
        with pytest.raises(ParameterError):
            PrivateKey((7, 3), eye, eye, 1)
        with pytest.raises(ParameterError):
            PrivateKey((3, 13), eye, eye, 1)
        with pytest.raises(StructureError):
            PrivateKey((3, 7), IntMatrix.from_rows([[1, 0], [2, 1]]), eye, 1)
        with pytest.raises(StructureError):
            PrivateKey((3, 7), IntMatrix.from_rows([[1, 1], [0, 1]]), eye, 1)

    def test_public_key_validation(self):
        with pytest.raises(StructureError):
            PublicKey(IntMatrix.from_rows([[1, 2], [3, 4]]), 1)
        with pytest.raises(StructureError):
            PublicKey(IntMatrix.from_rows([[1, -2], [-2, 4]]), 1)

    def test_random_keys(self):
        for seed in range(100):
            sk, pk = keygen(SchemeParams(5, d=3, min_prime_bits=32, rng_seed=seed))
            b = pk.b_matrix
            assert b.is_symmetric() and min(b.entries) >= 0
            for i, lam in enumerate(sk.lambdas):
                for j, p in enumerate(sk.primes):
                    assert lam % p == (i == j)
            p = sympy.Matrix(sk.p1_matrix.rows()) * sympy.Matrix(sk.p2_matrix.rows())
            oracle = p.T * sympy.diag(*sk.lambdas) * p
            assert b.rows() == [tuple(r) for r in oracle.tolist()]

    def test_deterministic(self):
        params = SchemeParams(4, d=2, min_prime_bits=64, rng_seed=1234)
        assert keygen(params) == keygen(params)
        other = SchemeParams(4, d=2, min_prime_bits=64, rng_seed=1235)
        assert keygen(params)[1] != keygen(other)[1]


class TestEncryptDecrypt:
    def test_zero(self, golden_sk, golden_pk):
        assert encrypt(golden_pk, (0, 0)) == 0
        assert decrypt(golden_sk, 0) == (0, 0)

    def test_golden(self, golden_sk, golden_pk):
        assert encrypt(golden_pk, (1, 1)) == 67
        assert decrypt(golden_sk, 67) == (1, 1)

    def test_basis_vectors(self, golden_pk):
        assert encrypt(golden_pk, (1, 0)) == 22
        assert encrypt(golden_pk, (0, 1)) == 15

    def test_message_validation(self, golden_pk):
        with pytest.raises(InvalidMessageError, match="entry 1"):
            encrypt(golden_pk, (0, 2))
        with pytest.raises(InvalidMessageError):
            encrypt(golden_pk, (1,))
        with pytest.raises(InvalidMessageError):
            encrypt(golden_pk, (-1, 0))

    def test_golden_z_by_exhaustive_roots(self):
        # every root of 67 mod 3 and mod 7, then the one below p/2
        z = []
        for p in (3, 7):
            roots = [r for r in range(p) if r * r % p == 67 % p]
            (small,) = [r for r in roots if 2 * r < p]
            z.append(small)
        assert z == [1, 2]
        assert recover_z(67, (3, 7)) == (1, 2)
        assert recover_z(0, (3, 7)) == (0, 0)

    def test_exhaustive_golden_message_space(self, golden_sk, golden_pk):
        for x in itertools.product(range(2), repeat=2):
            assert decrypt(golden_sk, encrypt(golden_pk, x)) == x

    def test_z_equals_x_times_p_transpose(self):
        rng = random.Random(5)
        for seed in range(30):
            sk, pk = keygen(SchemeParams(6, d=7, min_prime_bits=40, rng_seed=seed))
            x = [rng.randint(0, 7) for _ in range(6)]
            z = recover_z(encrypt(pk, x), sk.primes)
            assert z == em.vec_mat(x, em.transpose(sk.p_matrix))
            assert all(0 <= zk and 2 * zk < p for zk, p in zip(z, sk.primes))

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 16])
    def test_round_trip(self, n):
        rng = random.Random(n)
        for seed in range(20):
            d = rng.choice([1, 5, 100])
            sk, pk = keygen(SchemeParams(n, d=d, min_prime_bits=64, rng_seed=seed))
            x = tuple(rng.randint(0, d) for _ in range(n))
            assert decrypt(sk, encrypt(pk, x)) == x

    def test_tampered_ciphertext(self):
        sk, pk = keygen(SchemeParams(4, d=3, min_prime_bits=64, rng_seed=9))
        y = encrypt(pk, (1, 2, 3, 0))
        rejected = 0
        for delta in range(1, 40):
            try:
                x = decrypt(sk, y + delta)
            except InvalidCiphertextError as exc:
                assert "invalid ciphertext" in str(exc)
                rejected += 1
            else:
                assert encrypt(pk, x) == y + delta
        assert rejected > 0

    def test_sqrt_used_for_z(self):
        # recover_z is the per-prime square root folded below p/2
        for y in range(200):
            for p in (3, 7, 11):
                r = sqrt_mod_p(y % p, p) if y % p in {t * t % p for t in range(p)} else None
                if r is None:
                    continue
                assert recover_z(y, (p,))[0] == min(r, p - r)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 10), d=st.integers(1, 50), seed=st.integers(0, 2**64 - 1), data=st.data())
def test_round_trip_property(n, d, seed, data):
    sk, pk = keygen(SchemeParams(n, d=d, min_prime_bits=64, rng_seed=seed))
    x = tuple(data.draw(st.lists(st.integers(0, d), min_size=n, max_size=n)))
    assert decrypt(sk, encrypt(pk, x)) == x
