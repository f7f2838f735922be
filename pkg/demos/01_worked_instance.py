"""
A two-prime key, by hand
========================

The smallest interesting key: primes 3 and 7, message bound d = 1, one
off-diagonal 1 in P1 and P2 = I. Every number below can be checked by hand.
"""

from caoli import (
    IntMatrix,
    PrivateKey,
    algorithm_a,
    compute_beta,
    decrypt,
    encrypt,
    full_break,
    recover_prime_candidates,
    recover_z,
)

# The CRT basis: lambda_1 = 7 is 1 mod 3 and 0 mod 7, lambda_2 = 15 the other way round.
sk = PrivateKey((3, 7), IntMatrix.from_rows([[1, 0], [1, 1]]), IntMatrix.identity(2), d=1)
print("lambdas     ", sk.lambdas)

# The entry cap: beta^2 = min(3/2, 7/6), so only 0 and 1 are allowed below the diagonal.
bound = compute_beta(sk.primes, sk.d)
print("beta        ", round(bound.beta, 4), " cap", bound.cap)

pk = sk.public_key
print("public B\n" + str(pk.b_matrix))

#############################################################################
# Encryption is a quadratic form. For x = (1, 1) it adds up all four entries.
y = encrypt(pk, (1, 1))
print("ciphertext  ", y)

#############################################################################
# The key owner reduces y modulo each prime and takes the square root below p/2.
# 67 = 1 (mod 3) and 67 = 4 (mod 7), giving z = (1, 2); solving x P^T = z gives x.
print("z           ", recover_z(y, sk.primes))
print("decrypted   ", decrypt(sk, y))

#############################################################################
# The attacker starts from B alone. One elimination step,
# row 1 <- (22, 15) - (15 / 15) * (15, 15) = (7, 0), exposes both lambdas and P.
lambdas, p = algorithm_a(pk.b_matrix)
print("recovered lambdas", lambdas)
print("recovered P\n" + str(p))

# gcd(7 - 1, 15) = 3 and gcd(7, 15 - 1) = 7: the primes fall out directly.
print("gcd candidates   ", recover_prime_candidates(lambdas))

key, (message,) = full_break(pk, [y])
print("attack decrypts  ", y, "->", message)
