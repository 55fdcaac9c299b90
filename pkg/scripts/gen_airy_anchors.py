"""Regenerate src/rmtedge/_airy_anchors.py.

Anchor values of Ai and Ai' on the mid-range bands (|x| in [4.5, 9]) where
neither the Maclaurin series nor the asymptotic expansions reach 1e-13 in
double precision, plus a handful of frozen integral constants.  Values are
computed at 50 significant digits with mpmath and rounded to the nearest
double.  Run from the repository root:

    python3 scripts/gen_airy_anchors.py
"""

from pathlib import Path

import mpmath as mp

mp.mp.dps = 50

SPACING = 0.5
POSITIVE = [4.75 + SPACING * k for k in range(9)]   # 4.75 .. 8.75
ANCHORS = sorted([-a for a in POSITIVE] + POSITIVE)

HEADER = '"""Frozen Ai/Ai\' anchor values for mid-range Taylor stepping.\n\nGenerated by scripts/gen_airy_anchors.py (50-digit computation, rounded to\nthe nearest double).  Do not edit by hand.\n"""\n\nimport numpy as np\n\n'


def main() -> None:
    lines = [HEADER]
    lines.append(f"SPACING = {SPACING!r}\n\n")
    lines.append("ANCHOR_POINTS = np.array([\n")
    for a in ANCHORS:
        lines.append(f"    {a!r},\n")
    lines.append("])\n\n")
    lines.append("ANCHOR_AI = np.array([\n")
    for a in ANCHORS:
        lines.append(f"    {float(mp.airyai(a))!r},\n")
    lines.append("])\n\n")
    lines.append("ANCHOR_AIP = np.array([\n")
    for a in ANCHORS:
        lines.append(f"    {float(mp.airyai(a, 1))!r},\n")
    lines.append("])\n\n")
    tail12 = mp.mpf(1) / 3 - mp.airyai(12, -1)   # int_12^inf Ai
    lines.append(f"TAIL_FROM_12 = {float(tail12)!r}\n")
    out = Path(__file__).resolve().parent.parent / 'src' / 'rmtedge' / '_airy_anchors.py'
    out.write_text(''.join(lines))
    print(f"wrote {out} ({len(ANCHORS)} anchors)")


if __name__ == '__main__':
    main()
