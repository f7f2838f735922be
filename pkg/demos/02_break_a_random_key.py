"""
Breaking a realistic key from its public half
=============================================

Generate a key with sixteen 256-bit primes, intercept a handful of
ciphertexts, and decrypt them using nothing but the public matrix.
"""

import random
import time

from caoli import SchemeParams, encrypt, full_break, keygen

params = SchemeParams(n=16, d=255, min_prime_bits=256, rng_seed=2024)
sk, pk = keygen(params)

largest = max(v.bit_length() for v in pk.b_matrix.entries)
print(f"public matrix: {pk.n}x{pk.n}, entries up to {largest} bits")

rng = random.Random(1)
messages = [tuple(rng.randint(0, params.d) for _ in range(params.n)) for _ in range(5)]
ciphertexts = [encrypt(pk, m) for m in messages]

#############################################################################
# The attack only sees ``pk`` and the ciphertexts.
start = time.perf_counter()
key, recovered = full_break(pk, ciphertexts)
print(f"attack time: {time.perf_counter() - start:.3f}s")

for i, cand in enumerate(key.candidates, start=1):
    print(f"  p_{i:<2} {cand.describe():<12} {cand.p_hat}")

#############################################################################
# Compare with the secrets the attacker never saw.
print("P matches P1 P2:", key.p_matrix == sk.p_matrix)
print("primes match:   ", key.primes == sk.primes)
for m, r in zip(messages, recovered):
    print("  ", "ok  " if r == m else "MISS", r)
