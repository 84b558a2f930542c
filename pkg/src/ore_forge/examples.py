"""Built-in presentations, addressable by name."""

from __future__ import annotations

import re

from .coeff import ONE, Q
from .errors import OreForgeError
from .presentation import CGLPresentation, build_presentation


def quantum_plane() -> CGLPresentation:
    return build_presentation(
        "quantum-plane",
        ["x1", "x2"],
        [["1", "q^-1"], ["q", "1"]],
        {},
        [[1, 0], [0, 1]],
        [["q", "1"], ["q", "q"]],
    )


def quantum_weyl() -> CGLPresentation:
    # x2 x1 = q x1 x2 + 1; x2 has weight -1, so q_2 = q^-1
    return build_presentation(
        "quantum-weyl",
        ["x1", "x2"],
        [["1", "q^-1"], ["q", "1"]],
        {(2, 1): "1"},
        [[1], [-1]],
        [["q"], ["q"]],
    )


def qmat2() -> CGLPresentation:
    """Quantum 2x2 matrices with generators in the order x11, x12, x21, x22."""
    lam = [
        ["1", "q", "q", "1"],
        ["q^-1", "1", "1", "q"],
        ["q^-1", "1", "1", "q"],
        ["1", "q^-1", "q^-1", "1"],
    ]
    return build_presentation(
        "qmat2",
        ["x11", "x12", "x21", "x22"],
        lam,
        {(4, 1): "-(q - q^-1)*x12*x21"},
        [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]],
        [["q", "1", "1", "1"], ["1", "1", "q^-1", "q"], ["q^-1", "q", "1", "q"], ["1", "q^-1", "1", "q^-1"]],
    )


def qaffine(n: int) -> CGLPresentation:
    """Uniparameter quantum affine n-space: x_j x_i = q x_i x_j for i < j."""
    if n < 1:
        raise OreForgeError("quantum affine space needs at least one generator")
    lam = [[ONE if i == j else (Q if i < j else Q.inverse()) for i in range(n)] for j in range(n)]
    weights = [[1 if t == i else 0 for t in range(n)] for i in range(n)]
    h = [[Q if t <= j else ONE for t in range(n)] for j in range(n)]
    return build_presentation(f"qaffine-{n}", [f"x{i}" for i in range(1, n + 1)], lam, {}, weights, h)


def polynomial_ring() -> CGLPresentation:
    return build_presentation("polynomial", ["x1"], [["1"]], {}, [[1]], [["q"]])


BUILTIN_NAMES = ("quantum-plane", "quantum-weyl", "qmat2", "qaffine-N")

_FIXED = {
    "quantum-plane": quantum_plane,
    "quantum-weyl": quantum_weyl,
    "qmat2": qmat2,
}


def get_example(name: str) -> CGLPresentation:
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"qaffine-(\d+)", name)
    if m:
        return qaffine(int(m.group(1)))
    raise OreForgeError(f"unknown example {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def builtin_examples(max_affine: int = 6) -> list[CGLPresentation]:
    out = [quantum_plane(), quantum_weyl(), qmat2()]
    out.extend(qaffine(n) for n in range(1, max_affine + 1))
    return out
