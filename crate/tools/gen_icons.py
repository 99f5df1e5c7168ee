#!/usr/bin/env python3
"""Regenerate the bundled node icons.

The shipped icons are simple flat glyphs (rounded tile, category color,
kind alias) that follow the naming of the Kubernetes community icon set.
Drop-in replacement with the official artwork is a matter of overwriting
the PNG files in crates/k8s-atlas/assets/icons/.

Usage: python3 tools/gen_icons.py
"""

import os

from PIL import Image, ImageDraw, ImageFont

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "crates", "k8s-atlas", "assets", "icons")

SIZE = 64
RADIUS = 10

COLORS = {
    "workload": "#326CE5",   # kubernetes blue
    "config": "#2E7D32",
    "scaling": "#00838F",
    "policy": "#6A1B9A",
    "network": "#8E24AA",
    "storage": "#EF6C00",
    "rbac": "#C62828",
    "control": "#455A64",
    "extension": "#5D4037",
    "unknown": "#757575",
}

# alias -> category
ICONS = {
    "pod": "workload",
    "deploy": "workload",
    "sts": "workload",
    "ds": "workload",
    "job": "workload",
    "cj": "workload",
    "rc": "workload",
    "rs": "workload",
    "pt": "workload",
    "cm": "config",
    "secret": "config",
    "hpa": "scaling",
    "vpa": "scaling",
    "limits": "policy",
    "pdb": "policy",
    "psp": "policy",
    "quota": "policy",
    "svc": "network",
    "ep": "network",
    "eps": "network",
    "ing": "network",
    "ic": "network",
    "netpol": "network",
    "nad": "network",
    "pv": "storage",
    "pvc": "storage",
    "sc": "storage",
    "va": "storage",
    "csin": "storage",
    "csid": "storage",
    "csisc": "storage",
    "sa": "rbac",
    "role": "rbac",
    "rb": "rbac",
    "c.role": "rbac",
    "crb": "rbac",
    "user": "rbac",
    "group": "rbac",
    "node": "control",
    "pc": "control",
    "rtc": "control",
    "apisvc": "control",
    "ns": "control",
    "lease": "control",
    "crd": "extension",
    "vwc": "extension",
    "mwc": "extension",
    "unknown": "unknown",
}


def load_font(size):
    try:
        return ImageFont.load_default(size=size)
    except TypeError:
        return ImageFont.load_default()


def draw_icon(alias, category, path):
    img = Image.new("RGBA", (SIZE, SIZE), (0, 0, 0, 0))
    d = ImageDraw.Draw(img)
    d.rounded_rectangle(
        [2, 2, SIZE - 3, SIZE - 3],
        radius=RADIUS,
        fill=COLORS[category],
        outline="#FFFFFF",
        width=2,
    )
    text = alias if len(alias) <= 6 else alias[:6]
    font = load_font(30 if len(text) <= 3 else (20 if len(text) <= 4 else 14))
    bbox = d.textbbox((0, 0), text, font=font)
    w, h = bbox[2] - bbox[0], bbox[3] - bbox[1]
    d.text(((SIZE - w) / 2 - bbox[0], (SIZE - h) / 2 - bbox[1]), text, fill="white", font=font)
    img.save(path)


def main():
    os.makedirs(OUT, exist_ok=True)
    for alias, category in sorted(ICONS.items()):
        draw_icon(alias, category, os.path.join(OUT, f"{alias}.png"))
    print(f"wrote {len(ICONS)} icons to {OUT}")

    # custom-icon fixture assets for the cert-manager example
    fixtures = os.path.join(HERE, "..", "crates", "k8s-atlas", "tests", "fixtures", "certmanager")
    os.makedirs(fixtures, exist_ok=True)
    draw_icon("issuer", "extension", os.path.join(fixtures, "issuer.png"))
    draw_icon("cert", "extension", os.path.join(fixtures, "certificate.png"))
    print(f"wrote 2 fixture icons to {fixtures}")


if __name__ == "__main__":
    main()
