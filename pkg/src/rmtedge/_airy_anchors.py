"""Frozen Ai/Ai' anchor values for mid-range Taylor stepping.

Generated by scripts/gen_airy_anchors.py (50-digit computation, rounded to
the nearest double).  Do not edit by hand.
"""

import numpy as np

SPACING = 0.5

ANCHOR_POINTS = np.array([
    -8.75,
    -8.25,
    -7.75,
    -7.25,
    -6.75,
    -6.25,
    -5.75,
    -5.25,
    -4.75,
    4.75,
    5.25,
    5.75,
    6.25,
    6.75,
    7.25,
    7.75,
    8.25,
    8.75,
])

ANCHOR_AI = np.array([
    -0.2382300384596355,
    -0.25453632099656065,
    0.17497790079676515,
    0.32374057321118616,
    -0.03338479058876496,
    -0.3496120516108905,
    -0.18884209899944737,
    0.21900944784501322,
    0.37593203432914213,
    0.0001904614592681605,
    6.081011452242365e-05,
    1.8421246197730245e-05,
    5.3058617487520814e-06,
    1.4558127445788758e-06,
    3.8115630183373774e-07,
    9.537038961641585e-08,
    2.2837139444822283e-08,
    5.2401142318917526e-09,
])

ANCHOR_AIP = np.array([
    -0.6738561861206686,
    0.6085182968874139,
    0.8112327355065283,
    -0.30022899504735406,
    -0.9067040516921281,
    -0.19108625952341715,
    0.7391656870866844,
    0.701566726175189,
    -0.12709960620642027,
    -0.0004245926894565621,
    -0.00014209461719726815,
    -4.494062122298348e-05,
    -1.3469113451450983e-05,
    -3.834455740949934e-06,
    -1.0390462946280257e-06,
    -2.6849288679532617e-07,
    -6.626952666987631e-08,
    -1.5646762027577948e-08,
])

TAIL_FROM_12 = 3.953145915043153e-14
