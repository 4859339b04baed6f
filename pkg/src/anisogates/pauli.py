"""
Parser for Pauli-string probe expressions such as ``"X1*Z2 + 0.5*Y2"``.

Grammar::

    expr   := term ('+' term)*
    term   := [coeff ['*']] factor ('*' factor)*
    factor := ('X' | 'Y' | 'Z') site
    coeff  := signed real number

Tokens stand for Pauli matrices (not spin-1/2 operators).
"""
from __future__ import annotations

import re

import numpy as np

from .spin_algebra import PAULI, embed

_NUMBER = re.compile(r'[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?')
_FACTOR = re.compile(r'([XYZxyz])(\d+)')


class PauliParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f'{message} at position {position} in {text!r}')
        self.position = position


def parse_pauli(text: str) -> list[tuple[float, dict[int, str]]]:
    """Parse into ``[(coefficient, {site: axis}), ...]``."""
    pos = 0
    terms = []

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    while True:
        skip()
        coeff = 1.0
        m = _NUMBER.match(text, pos)
        if m:
            coeff = float(m.group(0))
            pos = m.end()
            skip()
            if text.startswith('*', pos):
                pos += 1
                skip()
        elif text.startswith('-', pos):
            coeff = -1.0
            pos += 1
            skip()
        factors: dict[int, str] = {}
        while True:
            m = _FACTOR.match(text, pos)
            if not m:
                raise PauliParseError('expected a Pauli factor X<n>, Y<n> or Z<n>', pos, text)
            site = int(m.group(2))
            if site < 1:
                raise PauliParseError(f'site index must be positive, got {site}', m.start(2), text)
            if site in factors:
                raise PauliParseError(f'site {site} repeated within one term', m.start(), text)
            factors[site] = m.group(1).lower()
            pos = m.end()
            skip()
            if text.startswith('*', pos):
                pos += 1
                skip()
                continue
            break
        terms.append((coeff, factors))
        if pos == len(text):
            return terms
        if text[pos] != '+':
            raise PauliParseError(f'unexpected character {text[pos]!r}', pos, text)
        pos += 1


def pauli_operator(text: str, n: int) -> np.ndarray:
    """Dense Hermitian operator for a Pauli expression on ``n`` qubits."""
    terms = parse_pauli(text)
    for _, factors in terms:
        bad = [s for s in factors if s > n]
        if bad:
            raise ValueError(f'site {bad[0]} in {text!r} exceeds the {n}-qubit register')
    return sum(c * embed({s: PAULI[a] for s, a in f.items()}, n) for c, f in terms)


def format_pauli(terms) -> str:
    parts = []
    for coeff, factors in terms:
        body = '*'.join(f'{a.upper()}{s}' for s, a in sorted(factors.items()))
        parts.append(body if coeff == 1 else f'{coeff!r}*{body}')
    return ' + '.join(parts)
