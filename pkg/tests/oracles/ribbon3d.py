"""Explicit polygonal embeddings around one ribbon singularity.

A disk lies in the plane z = 0; a band leaves it, comes back, passes
through it along an interior arc and returns to the disk from below.
The generator runs along the band core and closes up inside the disk;
its two-sided pushoff follows the four quadrants at the singularity.
Linking numbers come from the exact Gauss solid-angle formula for
polygons, so nothing here depends on the crossing tables of the
library.
"""

from __future__ import annotations

import numpy as np


def gauss_linking(c1, c2) -> float:
    """Linking number of two closed polygons (solid-angle formula)."""
    c1 = np.asarray(c1, float)
    c2 = np.asarray(c2, float)
    p1 = c1[:, None, :]
    p2 = np.roll(c1, -1, 0)[:, None, :]
    p3 = c2[None, :, :]
    p4 = np.roll(c2, -1, 0)[None, :, :]
    r13, r14, r23, r24 = p3 - p1, p4 - p1, p3 - p2, p4 - p2

    def unit_normal(a, b):
        c = np.cross(a, b)
        n = np.linalg.norm(c, axis=-1, keepdims=True)
        return c / np.where(n < 1e-15, 1, n), n[..., 0] < 1e-15

    n1, z1 = unit_normal(r13, r14)
    n2, z2 = unit_normal(r14, r24)
    n3, z3 = unit_normal(r24, r23)
    n4, z4 = unit_normal(r23, r13)

    def ang(a, b):
        return np.arcsin(np.clip((a * b).sum(-1), -1, 1))

    om = ang(n1, n2) + ang(n2, n3) + ang(n3, n4) + ang(n4, n1)
    s = np.sign((np.cross(p4 - p3, p2 - p1) * r13).sum(-1))
    om = np.where(z1 | z2 | z3 | z4, 0, om)
    return float((om * s).sum() / (4 * np.pi))


def _unit(v):
    v = np.asarray(v, float)
    return v / np.linalg.norm(v)


def _polyline(pts, n=12):
    out = []
    for a, b in zip(pts[:-1], pts[1:]):
        a, b = np.asarray(a, float), np.asarray(b, float)
        for t in np.linspace(0, 1, n, endpoint=False):
            out.append((1 - t) * a + t * b)
    out.append(np.asarray(pts[-1], float))
    return np.array(out)


def _band_normals(core, twist_window=None, twist=0):
    """Unit normals of a band whose width direction stays horizontal,
    rotated by ``twist`` half turns over the index window."""
    normals = []
    n = len(core)
    for i in range(n):
        t = _unit(core[min(i + 1, n - 1)] - core[max(i - 1, 0)])
        w = np.cross([0, 0, 1.0], t) if abs(t[2]) < 0.95 else np.array([1.0, 0, 0])
        w = _unit(w - np.dot(w, t) * t)
        a = 0.0
        if twist_window:
            lo, hi = twist_window
            a = np.pi * twist * min(max((i - lo) / (hi - lo), 0), 1)
        w2 = w * np.cos(a) + np.cross(t, w) * np.sin(a)
        normals.append(_unit(np.cross(t, w2)))
    return np.array(normals)


def _self_pairing(s1, n1, s2, n2, d1, d0, r, axis, delta=0.005, rho=0.12):
    """lk(generator, two-sided pushoff) for one pass.

    ``s1`` runs from the start slot to the singularity ``r`` (front leg),
    ``s2`` from the end slot to ``r`` (back leg); ``d1``/``d0`` are disk
    arcs from ``r`` to the end/start slots.
    """
    gen = np.vstack([s1[:-1], d1[:-1], s2[::-1][:-1], d0[:-1]])
    z = np.array([0, 0, 1.0])
    pieces = {}

    def away(arr):
        return np.linalg.norm(arr - r, axis=1) > rho

    for name, arr, nrm in (("s1", s1, n1), ("s2", s2, n2)):
        m = away(arr)
        pieces[name + "+"] = arr[m] + delta * nrm[m]
        pieces[name + "-"] = arr[m] - delta * nrm[m]
    for name, arr in (("d1", d1), ("d0", d0)):
        m = away(arr)
        pieces[name + "+"] = arr[m] + delta * z
        pieces[name + "-"] = arr[m] - delta * z
    ax = _unit(axis)
    e1 = _unit(np.cross(ax, z))
    e2 = np.cross(ax, e1)

    def angle(v):
        v = v - np.dot(v, ax) * ax
        return np.arctan2(np.dot(v, e2), np.dot(v, e1))

    rays = {"s1": (s1[-4] - r, n1[-4]), "s2": (s2[-4] - r, n2[-4]),
            "d1": (d1[3] - r, z), "d0": (d0[3] - r, z)}
    order = sorted(rays, key=lambda k: angle(rays[k][0]))
    succ = {}
    for i in range(4):
        u, v = order[i], order[(i + 1) % 4]
        (du, nu), (dv, nv) = rays[u], rays[v]
        su = "+" if np.dot(nu, dv) > 0 else "-"
        sv = "+" if np.dot(nv, du) > 0 else "-"
        if u.startswith("s"):
            succ[u + su] = v + sv
        else:
            succ[v + sv] = u + su
    for d, s, nn in (("d1", "s2", n2), ("d0", "s1", n1)):
        up = np.sign(nn[0][2]) > 0
        succ[d + "+"] = s + ("+" if up else "-")
        succ[d + "-"] = s + ("-" if up else "+")
    seen, total = set(), 0.0
    for start in pieces:
        if start in seen:
            continue
        comp, cur = [], start
        while cur not in seen:
            seen.add(cur)
            comp.append(pieces[cur])
            cur = succ[cur]
        total += gauss_linking(gen, np.vstack(comp))
    return total


def hairpin(twist: int, config: str, lift=0.3) -> float:
    """Band goes out, turns back in front of the disk and passes through."""
    fx = -1 if config == "L" else 1
    bx = -fx
    p0, p1 = (3 * fx, 4, 0), (3 * bx, 4, 0)
    r = np.array([0, -1.5, 0.0])
    d = lift
    s1 = _polyline([p0, (3 * fx, 5, 0), (3 * fx, 6, d), (3 * fx, 8, d), (2 * fx, 9, d), (fx, 8, d),
                    (fx, -1, d), (0.5 * fx, -1.4, 0.5 * d), r])
    s2 = _polyline([p1, (3 * bx, 5, 0), (3 * bx, 6, -d), (3 * bx, 8, -d), (2 * bx, 9, -d), (bx, 8, -d),
                    (bx, -1, -d), (0.5 * bx, -1.4, -0.5 * d), r])
    n1 = _band_normals(s1, (30, 40), twist)
    n2 = _band_normals(s2)
    d1 = _polyline([r, (0.3 * bx, -2.2, 0), (3.5 * bx, -2.2, 0), (3.5 * bx, 3.5, 0), (3 * bx, 3.5, 0), p1])
    d0 = _polyline([r, (0.3 * fx, -2.2, 0), (3.5 * fx, -2.2, 0), (3.5 * fx, 3.5, 0), (3 * fx, 3.5, 0), p0])
    return _self_pairing(s1, n1, s2, n2, d1, d0, r, axis=(0, 1, 0))


def s_bend(twist: int, config: str, lift=0.3) -> float:
    """Band comes straight down in front, passes, and loops round behind."""
    sx = 1 if config == "R" else -1
    r = np.array([0, -1.5, 0.0])
    p0, p1 = (-3 * sx, 4, 0), (3 * sx, 4, 0)
    d = lift
    s1 = _polyline([p0, (-3 * sx, 5, 0), (-3 * sx, 6, d), (-1.5 * sx, 7, d), (0, 6, d), (0, -1, d),
                    (0, -1.2, 0.5 * d), r])
    s2 = _polyline([p1, (3 * sx, 5, 0), (3 * sx, 6, -d), (6 * sx, 6, -d), (6 * sx, -6, -d), (0, -6, -d),
                    (0, -2, -d), (0, -1.8, -0.5 * d), r])
    n1 = _band_normals(s1, (30, 40), twist)
    n2 = _band_normals(s2)
    d1 = _polyline([r, (0.6 * sx, -1.2, 0), (3.5 * sx, -1.2, 0), (3.5 * sx, 3.5, 0), (3 * sx, 3.5, 0), p1])
    d0 = _polyline([r, (-0.6 * sx, -1.8, 0), (-3.5 * sx, -1.8, 0), (-3.5 * sx, 3.5, 0), (-3 * sx, 3.5, 0), p0])
    return _self_pairing(s1, n1, s2, n2, d1, d0, r, axis=(1, 0, 0))
