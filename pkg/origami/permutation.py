import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from common.errors import NotABijectionError, OrigamiSyntaxError

__all__ = ["Permutation", "parse_cycles"]

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}.

    ``images[i - 1]`` is the image of ``i``. Products compose right to
    left: ``(p * q)(i) == p(q(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise NotABijectionError(
                f"images {list(self.images)} are not a bijection of 1..{n}"
            )

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for symbol in cycle:
                if symbol < 1 or symbol > n:
                    raise NotABijectionError(f"symbol {symbol} is outside 1..{n}")
                if symbol in seen:
                    raise NotABijectionError(
                        f"symbol {symbol} appears more than once"
                    )
                seen.add(symbol)
            for position, symbol in enumerate(cycle):
                images[symbol - 1] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __pow__(self, exponent: int) -> "Permutation":
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.n)
        for _ in range(abs(exponent)):
            result = base * result
        return result

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(tuple(images))

    def conjugate(self, pi: "Permutation") -> "Permutation":
        """Return ``pi * self * pi^-1``: self with squares renamed by pi."""
        return pi * self * pi.inverse()

    def is_identity(self) -> bool:
        return all(image == i for i, image in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycles ordered by their smallest element, each starting there."""
        seen: set[int] = set()
        result: list[tuple[int, ...]] = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            current = self(start)
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self(current)
            if len(cycle) > 1 or include_fixed:
                result.append(tuple(cycle))
        return result

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse cycle notation such as ``(1)(2,3)(4,5,6)`` or ``()``.

    Raises:
        OrigamiSyntaxError: on anything that is not a run of parenthesised,
            comma separated positive integers.
    """
    stripped = text.strip()
    if not stripped:
        raise OrigamiSyntaxError("empty permutation; write () for the identity")
    leftover = _CYCLE.sub("", stripped).strip()
    if leftover:
        raise OrigamiSyntaxError(f"unexpected characters {leftover!r} in {text!r}")

    cycles: list[tuple[int, ...]] = []
    for body in _CYCLE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        symbols: list[int] = []
        for token in body.split(","):
            token = token.strip()
            if not (token.isascii() and token.isdigit()):
                raise OrigamiSyntaxError(f"bad symbol {token!r} in cycle ({body})")
            symbols.append(int(token))
        cycles.append(tuple(symbols))
    return cycles
