"""Command-line interface: ``caoli keygen|encrypt|decrypt|attack|simulate``.

Exit codes: 0 success, 1 usage or validation error, 2 partial key recovery,
3 internal assertion (a public matrix that fails exact elimination).
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import breaker, keyfile, simlab
from .cryptocore import SchemeParams, compute_beta, decrypt, encrypt, keygen
from .errors import CaoLiError, InexactDivisionError, MalformedPublicKeyError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means partial recovery here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(64)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_message(text: str) -> list[int]:
    parts = [p.strip() for p in text.replace("\n", ",").split(",")]
    parts = [p for p in parts if p]
    try:
        return [int(p, 10) for p in parts]
    except ValueError:
        raise CaoLiError(f"message must be comma-separated decimal integers, got {text.strip()!r}") from None


def _parse_ciphertexts(text: str) -> list[int]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            y = int(line.strip(), 10)
        except ValueError:
            raise CaoLiError(f"ciphertext line {lineno}: not a decimal integer") from None
        if y < 0:
            raise CaoLiError(f"ciphertext line {lineno}: negative value")
        out.append(y)
    return out


def format_message(x: Sequence[int]) -> str:
    return ",".join(str(v) for v in x)


def format_recovered_report(key: breaker.RecoveredKey) -> str:
    lines = [
        "caoli attack report",
        f"n {key.n}",
        "lambdas " + ",".join(str(v) for v in key.lambdas),
        "candidates " + ",".join(str(c.gcd_value) for c in key.candidates),
        "P",
        *(" ".join(str(v) for v in row) for row in key.p_matrix.rows()),
        "primes",
    ]
    for i, c in enumerate(key.candidates, start=1):
        p_hat = "-" if c.p_hat is None else str(c.p_hat)
        lines.append(f"{i} d={c.gcd_value} p_hat={p_hat} status={c.describe()}")
    lines.append("complete" if key.complete else
                 "partial failed=" + ",".join(str(i + 1) for i in key.failed_indices))
    return "\n".join(lines) + "\n"


def cmd_keygen(args: argparse.Namespace, out: TextIO) -> int:
    params = SchemeParams(args.n, args.d, args.min_prime_bits, _seed(args))
    sk, pk = keygen(params)
    keyfile.write_private(args.private_out, sk)
    keyfile.write_public(args.public_out, pk)
    bound = compute_beta(sk.primes, sk.d)
    print(f"beta {bound.beta:.6g}", file=sys.stderr)
    print(f"M {bound.cap}", file=sys.stderr)
    print("prime bits " + " ".join(str(p.bit_length()) for p in sk.primes), file=sys.stderr)
    return EXIT_OK


def cmd_encrypt(args: argparse.Namespace, out: TextIO) -> int:
    pk = keyfile.read_public(args.pubkey)
    if args.message is not None:
        text = args.message
    else:
        text = _read_text(args.message_file)
    print(encrypt(pk, _parse_message(text)), file=out)
    return EXIT_OK


def cmd_decrypt(args: argparse.Namespace, out: TextIO) -> int:
    sk = keyfile.read_private(args.privkey)
    text = args.ciphertext if args.ciphertext is not None else sys.stdin.read()
    ys = _parse_ciphertexts(text)
    if len(ys) != 1:
        raise CaoLiError(f"expected one ciphertext, got {len(ys)}")
    print(format_message(decrypt(sk, ys[0])), file=out)
    return EXIT_OK


def cmd_attack(args: argparse.Namespace, out: TextIO) -> int:
    pk = keyfile.read_public(args.pubkey)
    ys = _parse_ciphertexts(_read_text(args.ciphertexts)) if args.ciphertexts else []
    key, results = breaker.full_break(pk, ys, args.max_cofactor)
    report = format_recovered_report(key)
    if args.report and args.report != "-":
        Path(args.report).write_text(report)
    else:
        out.write(report)
    for r in results:
        print(str(r) if isinstance(r, breaker.BreakFailure) else format_message(r), file=out)
    return EXIT_OK if key.complete else EXIT_PARTIAL


def cmd_simulate(args: argparse.Namespace, out: TextIO) -> int:
    cfg = simlab.TrialConfig(
        trials=args.trials, n=args.n, d=args.d, min_prime_bits=args.min_prime_bits,
        base_seed=_seed(args), max_cofactor=args.max_cofactor,
    )
    stats = simlab.run_trials(cfg, workers=args.workers)
    report = simlab.render_report(stats)
    if args.report and args.report != "-":
        Path(args.report).write_text(report)
    else:
        out.write(report)
    if args.stats_out:
        Path(args.stats_out).write_text(simlab.format_stats_kv(stats))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="caoli", description="Cao-Li cryptosystem and its key-recovery attack.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--n", type=_positive, required=True, help="block length")
    p.add_argument("--d", type=_positive, default=1, help="message bound (default 1)")
    p.add_argument("--min-prime-bits", type=int, default=64)
    p.add_argument("--seed", type=int)
    p.add_argument("--private-out", default="caoli.priv")
    p.add_argument("--public-out", default="caoli.pub")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message vector")
    p.add_argument("--pubkey", required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--message", help="comma-separated integers")
    src.add_argument("--message-file", help="file holding the message (default stdin)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext with the private key")
    p.add_argument("--privkey", required=True)
    p.add_argument("ciphertext", nargs="?", help="decimal ciphertext (default stdin)")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", help="recover the private key from a public key")
    p.add_argument("--pubkey", required=True)
    p.add_argument("--ciphertexts", help="file with one decimal ciphertext per line")
    p.add_argument("--report", help="write the recovered-key report here (default stdout)")
    p.add_argument("--max-cofactor", type=_positive, default=breaker.DEFAULT_MAX_COFACTOR)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("simulate", help="measure prime-recovery rates over random keys")
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, default=1)
    p.add_argument("--min-prime-bits", type=int, default=64)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-cofactor", type=_positive, default=breaker.DEFAULT_MAX_COFACTOR)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--report", help="write the report here (default stdout)")
    p.add_argument("--stats-out", help="also write name=value statistics to this file")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except (MalformedPublicKeyError, InexactDivisionError) as exc:
        print(f"caoli {args.command}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CaoLiError, OSError) as exc:
        print(f"caoli {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
