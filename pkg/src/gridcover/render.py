"""Static renderings of grid colorings: plain PBM (P1) and SVG 1.1.

The window covers x1 in [0, width) and x2 in [0, height); the top row of the
output is the highest x2, so pictures read like the usual plane drawing.
"""

from __future__ import annotations

from dataclasses import dataclass


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderSpec:
    width: int
    height: int
    cell: int = 10
    fmt: str = "pbm"

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise RenderError(f"window must be at least 1x1 (got {self.width}x{self.height})")
        if self.cell < 1:
            raise RenderError("cell size must be positive")
        if self.fmt not in ("pbm", "svg"):
            raise RenderError(f"unknown format {self.fmt!r} (pbm or svg)")

    @classmethod
    def parse_window(cls, text: str, cell: int = 10, fmt: str = "pbm") -> "RenderSpec":
        try:
            w, h = (int(v) for v in text.lower().split("x"))
        except ValueError:
            raise RenderError(f"window must look like WxH (got {text!r})") from None
        return cls(w, h, cell, fmt)


def _rows(coloring, spec: RenderSpec):
    for x2 in range(spec.height - 1, -1, -1):
        yield [coloring.color(x1, x2) for x1 in range(spec.width)]


def render_pbm(coloring, spec: RenderSpec) -> bytes:
    lines = [f"P1 {spec.width} {spec.height}"]
    for row in _rows(coloring, spec):
        lines.append(" ".join("1" if c else "0" for c in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def render_svg(coloring, spec: RenderSpec) -> bytes:
    s = spec.cell
    W, H = spec.width * s, spec.height * s
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white" stroke="none"/>',
    ]
    for j, row in enumerate(_rows(coloring, spec)):
        for i, c in enumerate(row):
            if c:
                out.append(f'<rect x="{i * s}" y="{j * s}" width="{s}" height="{s}" fill="black"/>')
    # grid lines
    for i in range(spec.width + 1):
        out.append(f'<line x1="{i * s}" y1="0" x2="{i * s}" y2="{H}" stroke="gray" stroke-width="0.5"/>')
    for j in range(spec.height + 1):
        out.append(f'<line x1="0" y1="{j * s}" x2="{W}" y2="{j * s}" stroke="gray" stroke-width="0.5"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def render(coloring, spec: RenderSpec) -> bytes:
    return render_pbm(coloring, spec) if spec.fmt == "pbm" else render_svg(coloring, spec)
