"""Oriented-box geometry: canonical boxes, prompt parameterization, min-area
enclosing rectangles, rotated IoU via convex clipping, and mask IoU.

Coordinate conventions: x grows to the right, y grows downward (image rows).
A mask pixel at (row r, col c) covers the unit square [c, c+1] x [r, r+1], so
a filled k x m rectangle of pixels yields exactly a k x m enclosing box.
Angles are radians; polygons are counter-clockwise by the shoelace sign.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, EmptyMask, InvalidPolygon, NonFinite, NonPositiveSize

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class OrientedBox:
    """Rotated rectangle (cx, cy, w, h, theta) in pixels/radians.

    Canonical form uses the long-side convention: w >= h and
    theta in [-pi/2, pi/2). Construct arbitrary values and call
    :func:`canonicalize` to normalize.
    """

    cx: float
    cy: float
    w: float
    h: float
    theta: float

    def __post_init__(self):
        vals = (self.cx, self.cy, self.w, self.h, self.theta)
        if not all(math.isfinite(v) for v in vals):
            raise NonFinite(f"box fields must be finite, got {vals}")
        if self.w <= 0 or self.h <= 0:
            raise NonPositiveSize(f"box sides must be > 0, got w={self.w}, h={self.h}")

    @property
    def area(self) -> float:
        return self.w * self.h

    def to_dict(self) -> dict:
        return {"cx": self.cx, "cy": self.cy, "w": self.w, "h": self.h, "theta": self.theta}

    @classmethod
    def from_dict(cls, d: dict) -> "OrientedBox":
        return cls(float(d["cx"]), float(d["cy"]), float(d["w"]), float(d["h"]), float(d["theta"]))


def save_box(box: OrientedBox, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(box.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")


def load_box(path) -> OrientedBox:
    with open(path, encoding="utf-8") as f:
        return OrientedBox.from_dict(json.load(f))


@dataclass(frozen=True)
class PromptParams:
    """Normalized prompt parameterization of a canonical box.

    phi1/phi2 are the box's local-frame top-left and bottom-right corners
    rotated into the image frame and divided by the image size; they are not
    clamped, so boxes near borders may fall outside [0, 1). theta_pair is
    ((sin t + 1)/2, (cos t + 1)/2).
    """

    phi1: tuple[float, float]
    phi2: tuple[float, float]
    theta_pair: tuple[float, float]


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def canonicalize(box: OrientedBox) -> OrientedBox:
    """Return the same rectangle point-set with w >= h, theta in [-pi/2, pi/2)."""
    w, h, theta = box.w, box.h, box.theta
    if w < h:
        w, h = h, w
        theta += _HALF_PI
    theta = (theta + _HALF_PI) % math.pi - _HALF_PI
    if theta >= _HALF_PI:  # fp edge: (x % pi) can return pi for tiny negative x
        theta -= math.pi
    return OrientedBox(box.cx, box.cy, w, h, theta)


def to_prompt_params(box: OrientedBox, image_w: float, image_h: float) -> PromptParams:
    """Map a box to normalized corner pair + orientation pair.

    The box is canonicalized first. Corners are the local-frame (-w/2, -h/2)
    and (+w/2, +h/2) points rotated into the image frame, so they carry the
    orientation and degenerate to the axis-aligned convention at theta=0.
    """
    if image_w <= 0 or image_h <= 0:
        raise NonPositiveSize(f"image dims must be > 0, got {image_w}x{image_h}")
    b = canonicalize(box)
    r = rotation_matrix(b.theta)
    center = np.array([b.cx, b.cy])
    half = np.array([b.w / 2.0, b.h / 2.0])
    size = np.array([float(image_w), float(image_h)])
    p1 = (center + r @ (-half)) / size
    p2 = (center + r @ half) / size
    return PromptParams(
        phi1=(float(p1[0]), float(p1[1])),
        phi2=(float(p2[0]), float(p2[1])),
        theta_pair=((math.sin(b.theta) + 1.0) / 2.0, (math.cos(b.theta) + 1.0) / 2.0),
    )


def from_prompt_params(params: PromptParams, image_w: float, image_h: float) -> OrientedBox:
    """Inverse of :func:`to_prompt_params` (corners + angle -> canonical box)."""
    if image_w <= 0 or image_h <= 0:
        raise NonPositiveSize(f"image dims must be > 0, got {image_w}x{image_h}")
    sin_t = 2.0 * params.theta_pair[0] - 1.0
    cos_t = 2.0 * params.theta_pair[1] - 1.0
    theta = math.atan2(sin_t, cos_t)
    size = np.array([float(image_w), float(image_h)])
    p1 = np.asarray(params.phi1) * size
    p2 = np.asarray(params.phi2) * size
    center = (p1 + p2) / 2.0
    half = rotation_matrix(-theta) @ ((p2 - p1) / 2.0)
    if half[0] <= 0 or half[1] <= 0:
        raise NonPositiveSize("corner pair does not span a positive box")
    return canonicalize(OrientedBox(center[0], center[1], 2.0 * half[0], 2.0 * half[1], theta))


class ConvexPolygon:
    """Immutable CCW convex polygon with positive shoelace area."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidPolygon(f"need an (n>=3, 2) vertex array, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise NonFinite("polygon vertices must be finite")
        if shoelace_area(v) <= 0:
            raise InvalidPolygon("vertices must be counter-clockwise with positive area")
        # strict convexity up to numerical slack scaled by coordinate magnitude
        tol = 1e-9 * max(1.0, float(np.abs(v).max()) ** 2)
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        if (cross < -tol).any():
            raise InvalidPolygon("vertices are not convex")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __setattr__(self, name, value):
        raise AttributeError("ConvexPolygon is immutable")

    @property
    def area(self) -> float:
        return shoelace_area(self.vertices)


def shoelace_area(vertices: np.ndarray) -> float:
    """Signed area; positive for CCW order."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def obb_to_polygon(box: OrientedBox) -> ConvexPolygon:
    """Four CCW corners: center + R(theta) @ (+-w/2, +-h/2)."""
    b = canonicalize(box)
    r = rotation_matrix(b.theta)
    local = np.array(
        [
            [-b.w / 2.0, -b.h / 2.0],
            [b.w / 2.0, -b.h / 2.0],
            [b.w / 2.0, b.h / 2.0],
            [-b.w / 2.0, b.h / 2.0],
        ]
    )
    return ConvexPolygon(local @ r.T + np.array([b.cx, b.cy]))


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Strict convex hull (collinear points dropped) by monotone chain, CCW."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)  # sorts lexicographically
    if len(pts) < 3:
        return pts

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return np.asarray(hull)
    return np.asarray(hull)


def mask_corner_points(mask: np.ndarray) -> np.ndarray:
    """Point cloud of the 4 corners of every foreground pixel."""
    mask = np.asarray(mask).astype(bool)
    rows, cols = np.nonzero(mask)
    if len(rows) == 0:
        raise EmptyMask("mask has no foreground pixels")
    x, y = cols.astype(float), rows.astype(float)
    corners = np.concatenate(
        [
            np.stack([x, y], axis=1),
            np.stack([x + 1, y], axis=1),
            np.stack([x, y + 1], axis=1),
            np.stack([x + 1, y + 1], axis=1),
        ]
    )
    return np.unique(corners, axis=0)


def min_area_obb(source) -> OrientedBox:
    """Minimum-area enclosing rectangle of a mask, polygon, or point array.

    Sweeps hull-edge directions (a minimal rectangle shares a side with some
    hull edge) and returns the canonical best box.
    """
    if isinstance(source, ConvexPolygon):
        pts = source.vertices
    elif isinstance(source, np.ndarray) and source.dtype == bool:
        pts = mask_corner_points(source)
    else:
        pts = np.asarray(source, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidPolygon(f"expected mask, polygon, or (n, 2) points, got shape {pts.shape}")
    hull = convex_hull(pts)
    if len(hull) < 3:
        raise InvalidPolygon("point set is degenerate (collinear or fewer than 3 unique points)")
    edges = np.roll(hull, -1, axis=0) - hull
    angles = np.arctan2(edges[:, 1], edges[:, 0])

    best = None
    for ang in angles:
        rot = rotation_matrix(-ang)
        proj = hull @ rot.T
        lo, hi = proj.min(axis=0), proj.max(axis=0)
        extent = hi - lo
        area = float(extent[0] * extent[1])
        if best is None or area < best[0]:
            best = (area, ang, lo, hi)
    _, ang, lo, hi = best
    center = rotation_matrix(ang) @ ((lo + hi) / 2.0)
    return canonicalize(
        OrientedBox(float(center[0]), float(center[1]), float(hi[0] - lo[0]), float(hi[1] - lo[1]), float(ang))
    )


def _clip_polygon(subject: np.ndarray, clipper: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex subject by a convex CCW clipper."""
    output = list(subject)
    for i in range(len(clipper)):
        a = clipper[i]
        b = clipper[(i + 1) % len(clipper)]
        ex, ey = b[0] - a[0], b[1] - a[1]
        if not output:
            break
        inp = output
        output = []
        prev = inp[-1]
        prev_in = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0]) >= 0
        for cur in inp:
            cur_in = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0]) >= 0
            if cur_in != prev_in:
                # segment crosses the clip line; t from signed distances
                dp = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0])
                dc = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0])
                t = dp / (dp - dc)
                output.append(prev + t * (cur - prev))
            if cur_in:
                output.append(cur)
            prev, prev_in = cur, cur_in
    return np.asarray(output)


def rotated_iou(a: OrientedBox, b: OrientedBox) -> float:
    """Intersection-over-union of two rotated rectangles, in [0, 1]."""
    pa = obb_to_polygon(a).vertices
    pb = obb_to_polygon(b).vertices
    inter_poly = _clip_polygon(pa, pb)
    inter = shoelace_area(inter_poly) if len(inter_poly) >= 3 else 0.0
    inter = max(inter, 0.0)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return min(max(inter / union, 0.0), 1.0)


def mask_iou(a: np.ndarray, b: np.ndarray) -> float:
    """|a & b| / |a | b|; both-empty counts as full agreement (1.0)."""
    a = np.asarray(a).astype(bool)
    b = np.asarray(b).astype(bool)
    if a.shape != b.shape:
        raise DimMismatch(f"mask shapes differ: {a.shape} vs {b.shape}")
    union = np.logical_or(a, b).sum()
    if union == 0:
        return 1.0
    return float(np.logical_and(a, b).sum() / union)
