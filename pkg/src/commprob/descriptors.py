"""Parser for the group-descriptor mini-language.

Grammar (left-associative, whitespace-free, case-sensitive)::

    expr  := atom ( 'x' atom | '/Z' | "/G'" )*
    atom  := 'C' int | 'D' int | 'S' int | 'E(' int ',' int ')'

``D3xD3/Z`` is ``(D3 x D3) / Z(D3 x D3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import groups
from .groups import ORDER_CAP, Group


class DescriptorError(ValueError):
    def __init__(self, text: str, position: int, expected: list[str]):
        found = repr(text[position]) if position < len(text) else "end of input"
        super().__init__(
            f"bad descriptor {text!r} at offset {position}: expected {' or '.join(expected)}, found {found}"
        )
        self.text = text
        self.position = position
        self.expected = expected


@dataclass(frozen=True)
class Atom:
    kind: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class Product:
    left: "Node"
    right: Atom


@dataclass(frozen=True)
class Quotient:
    base: "Node"
    by: str  # 'Z' or "G'"


Node = Union[Atom, Product, Quotient]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, *expected: str):
        raise DescriptorError(self.text, self.pos, list(expected))

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            self.fail(repr(literal))
        self.pos += len(literal)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("integer")
        return int(self.text[start : self.pos])

    def atom(self) -> Atom:
        c = self.peek()
        if c in ("C", "D", "S"):
            self.pos += 1
            return Atom(c, (self.integer(),))
        if c == "E":
            self.pos += 1
            self.expect("(")
            p = self.integer()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            return Atom("E", (p, n))
        self.fail("'C'", "'D'", "'S'", "'E('")

    def parse(self) -> Node:
        node: Node = self.atom()
        while self.pos < len(self.text):
            c = self.peek()
            if c == "x":
                self.pos += 1
                node = Product(node, self.atom())
            elif c == "/":
                self.pos += 1
                if self.text.startswith("G'", self.pos):
                    self.pos += 2
                    node = Quotient(node, "G'")
                elif self.peek() == "Z":
                    self.pos += 1
                    node = Quotient(node, "Z")
                else:
                    self.fail("'Z'", "\"G'\"")
            else:
                self.fail("'x'", "'/'", "end of input")
        return node


def parse(text: str) -> Node:
    return _Parser(text).parse()


def _build(node: Node, cap: Optional[int]) -> Group:
    if isinstance(node, Atom):
        if node.kind == "C":
            return groups.cyclic(node.args[0], cap)
        if node.kind == "D":
            return groups.dihedral(node.args[0], cap)
        if node.kind == "S":
            return groups.symmetric(node.args[0], cap)
        return groups.extraspecial(*node.args, order_cap=cap)
    if isinstance(node, Product):
        left = _build(node.left, cap)
        right = _build(node.right, cap)
        return groups.direct_product(left, right, cap)
    base = _build(node.base, cap)
    if node.by == "Z":
        return groups.quotient(base, groups.center(base), suffix="Z")
    return groups.quotient(base, groups.commutator_subgroup(base), suffix="G'")


def build(text: str, order_cap: Optional[int] = ORDER_CAP) -> Group:
    """Construct the group named by a descriptor such as ``E(2,2)xC3/Z``."""
    return _build(parse(text), order_cap)
