"""
Line-oriented text form of circuits, used as report attachments.

One pulse per line: kind, comma-separated sites, then angles in radians
with 17 significant digits. Exchange pulses that pin their own anisotropy
carry ``beta=bx,by,bz gamma=g``. Framed pulses prefix ``framed <omega>``.
"""
from __future__ import annotations

from .circuits import (Circuit, EncodedZ, ExchangePulse, FramedPulse, ParallelZ, ZGate,
                       ZeemanPulse)
from .model import AnisotropyParams


def fmt(x: float) -> str:
    return f'{x:.17g}'


def _sites(s) -> str:
    return ','.join(str(k) for k in s)


def pulse_to_text(p) -> str:
    if isinstance(p, ExchangePulse):
        if p.extra is not None:
            raise ValueError('perturbed exchange pulses have no text form')
        line = f'exchange {p.i},{p.j} {fmt(p.phi)}'
        if p.params is not None:
            line += f' beta={",".join(fmt(b) for b in p.params.beta)} gamma={fmt(p.params.gamma)}'
        return line
    if isinstance(p, ZeemanPulse):
        return f'zeeman {p.j} {fmt(p.eta)}'
    if isinstance(p, ZGate):
        return f'z {p.j}'
    if isinstance(p, ParallelZ):
        return f'parallel_z {_sites(p.sites)}'
    if isinstance(p, EncodedZ):
        return f'encoded_z {p.i} {fmt(p.epsilon)}'
    if isinstance(p, FramedPulse):
        return f'framed {fmt(p.omega)} {pulse_to_text(p.inner)}'
    raise TypeError(f'unknown pulse {p!r}')


def circuit_to_text(c: Circuit) -> str:
    head = f'# circuit {c.label} qubits={c.n_qubits} steps={c.declared_steps}'
    return '\n'.join([head] + [pulse_to_text(p) for p in c.pulses]) + '\n'


def pulse_from_text(line: str):
    words = line.split()
    kind, rest = words[0], words[1:]
    try:
        if kind == 'exchange':
            i, j = (int(s) for s in rest[0].split(','))
            params = None
            if len(rest) > 2:
                opts = dict(w.split('=', 1) for w in rest[2:])
                params = AnisotropyParams(tuple(float(b) for b in opts['beta'].split(',')),
                                          float(opts['gamma']))
            return ExchangePulse(i, j, float(rest[1]), params)
        if kind == 'zeeman':
            return ZeemanPulse(int(rest[0]), float(rest[1]))
        if kind == 'z':
            return ZGate(int(rest[0]))
        if kind == 'parallel_z':
            return ParallelZ(tuple(int(s) for s in rest[0].split(',')))
        if kind == 'encoded_z':
            return EncodedZ(int(rest[0]), float(rest[1]))
        if kind == 'framed':
            return FramedPulse(pulse_from_text(' '.join(rest[1:])), float(rest[0]))
    except (IndexError, KeyError, ValueError) as exc:
        raise ValueError(f'malformed pulse line {line!r}: {exc}') from exc
    raise ValueError(f'unknown pulse kind {kind!r}')


def circuit_from_text(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith('# circuit'):
        raise ValueError('missing circuit header line')
    head = lines[0].split()
    label = head[2]
    meta = dict(w.split('=', 1) for w in head[3:])
    pulses = tuple(pulse_from_text(ln) for ln in lines[1:])
    return Circuit(pulses, int(meta['qubits']), label, int(meta['steps']))
