# Copyright 2026 The qgk Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes the small PNG fixtures in tests/data with PIL, an encoder
independent of the library's libpng writer."""

import os

import numpy as np
from PIL import Image

out = os.path.join(os.path.dirname(__file__), "..", "data")
rng = np.random.default_rng(20261015)

rgb = rng.integers(0, 256, size=(5, 7, 3), dtype=np.uint8)
Image.fromarray(rgb, "RGB").save(os.path.join(out, "tiny_rgb_pil.png"), optimize=True)
rgb.tofile(os.path.join(out, "tiny_rgb.raw"))

rgba = rng.integers(0, 256, size=(16, 24, 4), dtype=np.uint8)
Image.fromarray(rgba, "RGBA").save(os.path.join(out, "rgba_pil.png"))

gray16 = rng.integers(0, 65536, size=(8, 8), dtype=np.uint16)
Image.fromarray(gray16).save(os.path.join(out, "gray16.png"))

Image.fromarray(rgb, "RGB").convert("P", palette=Image.ADAPTIVE).save(
    os.path.join(out, "palette.png"))
