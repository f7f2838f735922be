"""The Cao-Li quadratic-form public-key cryptosystem and the attack that breaks it."""

from .breaker import (
    BreakFailure,
    PrimeCandidate,
    RecoveredKey,
    Status,
    algorithm_a,
    full_break,
    recover_key,
    recover_prime_candidates,
    refine_candidate,
)
from .cryptocore import (
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
from .exactmat import IntMatrix
from .numtheory import is_probable_prime, sqrt_mod_p
from .simlab import TrialConfig, TrialStats, coprimality_heuristic, render_report, run_trials

__version__ = "0.1.0"
