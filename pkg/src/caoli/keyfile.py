"""Plain-text key files.

Public key::

    caoli-pub v1
    n d
    <n lines of n decimal entries of B>

Private key::

    caoli-priv v1
    n d
    <n primes>
    <n lines of P1>
    <n lines of P2>

Parsing is strict and every complaint carries the 1-based line number.
"""

from __future__ import annotations

from pathlib import Path

from .cryptocore import PrivateKey, PublicKey, compute_beta
from .errors import CaoLiError
from .exactmat import IntMatrix

PUB_HEADER = "caoli-pub v1"
PRIV_HEADER = "caoli-priv v1"


class KeyFileError(CaoLiError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _matrix_lines(m: IntMatrix) -> list[str]:
    return [" ".join(str(v) for v in row) for row in m.rows()]


def dump_public(pk: PublicKey) -> str:
    lines = [PUB_HEADER, f"{pk.n} {pk.d}", *_matrix_lines(pk.b_matrix)]
    return "\n".join(lines) + "\n"


def dump_private(sk: PrivateKey) -> str:
    lines = [
        PRIV_HEADER,
        f"{sk.n} {sk.d}",
        " ".join(str(p) for p in sk.primes),
        *_matrix_lines(sk.p1_matrix),
        *_matrix_lines(sk.p2_matrix),
    ]
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.lines):
            raise KeyFileError(self.pos + 1, f"unexpected end of file, expected {what}")
        self.pos += 1
        return self.pos, self.lines[self.pos - 1]

    def ints(self, what: str, count: int, non_negative: bool = True) -> list[int]:
        lineno, line = self.next(what)
        parts = line.split()
        if len(parts) != count:
            raise KeyFileError(lineno, f"{what}: expected {count} integers, found {len(parts)}")
        try:
            values = [int(p, 10) for p in parts]
        except ValueError:
            raise KeyFileError(lineno, f"{what}: not a decimal integer list") from None
        if non_negative:
            for v in values:
                if v < 0:
                    raise KeyFileError(lineno, f"{what}: negative entry {v}")
        return values

    def header(self, expected: str) -> None:
        lineno, line = self.next("header")
        if line.strip() != expected:
            raise KeyFileError(lineno, f"expected header {expected!r}, found {line.strip()!r}")

    def dims(self) -> tuple[int, int]:
        lineno = self.pos + 1
        n, d = self.ints("dimensions 'n d'", 2)
        if n < 1 or d < 1:
            raise KeyFileError(lineno, f"n and d must be >= 1, got n={n} d={d}")
        return n, d

    def matrix(self, name: str, n: int) -> tuple[IntMatrix, int]:
        first = self.pos + 1
        rows = [self.ints(f"{name} row {i + 1}", n) for i in range(n)]
        return IntMatrix.from_rows(rows), first

    def finish(self) -> None:
        for lineno in range(self.pos + 1, len(self.lines) + 1):
            if self.lines[lineno - 1].strip():
                raise KeyFileError(lineno, "trailing content after key")


def parse_public(text: str) -> PublicKey:
    r = _Reader(text)
    r.header(PUB_HEADER)
    n, d = r.dims()
    b, first = r.matrix("B", n)
    r.finish()
    for i in range(n):
        for j in range(i):
            if b[i, j] != b[j, i]:
                raise KeyFileError(first + i, f"B is not symmetric at ({i + 1},{j + 1})")
    return PublicKey(b, d)


def parse_private(text: str) -> PrivateKey:
    r = _Reader(text)
    r.header(PRIV_HEADER)
    n, d = r.dims()
    primes_line = r.pos + 1
    primes = r.ints("primes", n)
    p1, first1 = r.matrix("P1", n)
    p2, first2 = r.matrix("P2", n)
    r.finish()
    if any(a >= b for a, b in zip(primes, primes[1:])):
        raise KeyFileError(primes_line, "primes must be strictly ascending")
    try:
        cap = compute_beta(primes, d).cap
    except CaoLiError as exc:
        raise KeyFileError(primes_line, f"invalid private key: {exc}") from exc
    for name, m, first in (("P1", p1, first1), ("P2", p2, first2)):
        for i in range(n):
            if m[i, i] != 1 or any(m[i, j] for j in range(i + 1, n)):
                raise KeyFileError(first + i, f"{name} row {i + 1} is not unit lower triangular")
            if any(m[i, j] > cap for j in range(i)):
                raise KeyFileError(first + i, f"{name} row {i + 1} has an entry outside [0, {cap}]")
    try:
        return PrivateKey(tuple(primes), p1, p2, d)
    except CaoLiError as exc:
        raise KeyFileError(primes_line, f"invalid private key: {exc}") from exc


def write_public(path: str | Path, pk: PublicKey) -> None:
    Path(path).write_text(dump_public(pk))


def write_private(path: str | Path, sk: PrivateKey) -> None:
    Path(path).write_text(dump_private(sk))


def read_public(path: str | Path) -> PublicKey:
    return parse_public(Path(path).read_text())


def read_private(path: str | Path) -> PrivateKey:
    return parse_private(Path(path).read_text())
