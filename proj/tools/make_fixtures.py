#!/usr/bin/env python3
"""Regenerates the skeleton, layout and length fixtures under data/.

The WholeBody skeleton follows the usual 133-keypoint ordering (17 COCO body,
6 foot, 68 face, 2 x 21 hand keypoints). The car skeleton is a 66-keypoint
model whose 108 connections are the minimum spanning tree of a 3D template
plus the shortest remaining template pairs.

Template lengths are Euclidean distances measured on the template layouts.
They are stand-ins for dataset-averaged lengths, not dataset statistics.
"""

import json
import math
import pathlib

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def write(name, obj):
    path = DATA / name
    path.write_text(json.dumps(obj, indent=2) + "\n")
    print("wrote", path)


def skeleton_doc(name, keypoints, edges, multipliers=None):
    kps = []
    for k in keypoints:
        entry = {"name": k}
        if multipliers and multipliers.get(k, 1.0) != 1.0:
            entry["crafted_multiplier"] = multipliers[k]
        kps.append(entry)
    return {"name": name, "keypoints": kps, "edges": [[a, b] for a, b in edges]}


def layout_doc(name, positions):
    return {"name": name,
            "keypoints": {k: [round(x, 3), round(y, 3)] for k, (x, y) in positions.items()}}


def lengths_doc(skeleton_name, edges, lengths, note):
    return {
        "meta": {"source": note},
        "skeleton": skeleton_name,
        "mode": "raw",
        "edges": [{"a": a, "b": b, "count": 1, "mean_length": round(l, 6)}
                  for (a, b), l in zip(edges, lengths)],
    }


# --- small analytic fixtures -------------------------------------------------

def small_fixtures():
    p3 = ["a", "b", "c"]
    p3_edges = [("a", "b"), ("b", "c")]
    write("p3.skeleton.json", skeleton_doc("p3", p3, p3_edges))
    write("p3.lengths.json", lengths_doc("p3", p3_edges, [1.0, 1.0], "unit lengths"))
    write("p3.layout.json", layout_doc("p3", {"a": (0, 0), "b": (100, 0), "c": (200, 0)}))

    # five instances, all points visible, a-b distance 5 and b-c distance 10 on average
    anns = []
    for i in range(5):
        dx = 3.0 + i
        anns.append({
            "id": i + 1,
            "keypoints": [10.0, 10.0, 2, 10.0 + dx, 14.0, 2, 10.0 + dx + 6.0, 22.0, 1],
            "bbox": [0.0, 0.0, 40.0, 40.0],
        })
    write("p3.annotations.json", {"annotations": anns})
    write("p3_partial.annotations.json", {"annotations": [
        {"id": 1, "keypoints": [0.0, 0.0, 2, 3.0, 4.0, 2, 0.0, 0.0, 0], "bbox": [0, 0, 10, 10]}]})
    write("empty.annotations.json", {"annotations": []})

    c5 = [f"v{i}" for i in range(5)]
    c5_edges = [(c5[i], c5[(i + 1) % 5]) for i in range(5)]
    write("c5.skeleton.json", skeleton_doc("c5", c5, c5_edges))
    write("c5.lengths.json", lengths_doc("c5", c5_edges, [1.0] * 5, "unit lengths"))

    clique = [f"k{i}" for i in range(5)]
    tail = [f"t{i}" for i in range(5)]
    lolli_edges = [(clique[i], clique[j]) for i in range(5) for j in range(i + 1, 5)]
    lolli_edges.append((clique[4], tail[0]))
    lolli_edges += [(tail[i], tail[i + 1]) for i in range(4)]
    write("lollipop.skeleton.json", skeleton_doc("lollipop", clique + tail, lolli_edges))
    write("lollipop.lengths.json",
          lengths_doc("lollipop", lolli_edges, [1.0] * len(lolli_edges), "unit lengths"))


# --- WholeBody -----------------------------------------------------------------

BODY = ["nose", "left_eye", "right_eye", "left_ear", "right_ear", "left_shoulder",
        "right_shoulder", "left_elbow", "right_elbow", "left_wrist", "right_wrist",
        "left_hip", "right_hip", "left_knee", "right_knee", "left_ankle", "right_ankle"]
FOOT = ["left_big_toe", "left_small_toe", "left_heel",
        "right_big_toe", "right_small_toe", "right_heel"]
FINGERS = ["thumb", "index", "middle", "ring", "pinky"]

# standing pose in template units (person facing the viewer, y pointing down)
BODY_POS = {
    "nose": (0.0, -9.3), "left_eye": (0.35, -9.7), "right_eye": (-0.35, -9.7),
    "left_ear": (0.7, -9.5), "right_ear": (-0.7, -9.5),
    "left_shoulder": (1.4, -8.0), "right_shoulder": (-1.4, -8.0),
    "left_elbow": (1.75, -6.0), "right_elbow": (-1.75, -6.0),
    "left_wrist": (1.75, -4.0), "right_wrist": (-1.75, -4.0),
    "left_hip": (1.26, -4.0), "right_hip": (-1.26, -4.0),
    "left_knee": (1.4, -2.0), "right_knee": (-1.4, -2.0),
    "left_ankle": (1.4, 0.0), "right_ankle": (-1.4, 0.0),
}

COCO_SKELETON_1BASED = [(16, 14), (14, 12), (17, 15), (15, 13), (12, 13), (6, 12), (7, 13),
                        (6, 7), (6, 8), (7, 9), (8, 10), (9, 11), (2, 3), (1, 2), (1, 3),
                        (2, 4), (3, 5), (4, 6), (5, 7)]


def face_template():
    """68 landmarks in the common iBUG ordering, centred on the head."""
    cx, cy, s = 0.0, -9.45, 0.75
    pts = []
    for i in range(17):  # jaw, subject's right temple around the chin to the left temple
        t = math.pi * (1.0 - i / 16.0)
        pts.append((cx + s * math.cos(t), cy + s * math.sin(t)))
    for i in range(5):  # right brow 17..21, outer to inner
        pts.append((-0.55 + 0.1125 * i, cy - 0.42 - 0.06 * math.sin(math.pi * i / 4.0)))
    for i in range(5):  # left brow 22..26, inner to outer
        pts.append((0.1 + 0.1125 * i, cy - 0.42 - 0.06 * math.sin(math.pi * i / 4.0)))
    for i in range(4):  # nose bridge 27..30
        pts.append((cx, cy - 0.3 + 0.12 * i))
    for i in range(5):  # nostrils 31..35
        pts.append((cx - 0.16 + 0.08 * i, cy + 0.12 + 0.03 * (1 - abs(i - 2) / 2.0)))
    for ex in (-0.3, 0.3):  # eyes 36..41, 42..47
        for i in range(6):
            t = math.pi - 2.0 * math.pi * i / 6.0
            pts.append((ex + 0.13 * math.cos(t), cy - 0.22 - 0.05 * math.sin(t)))
    for i in range(12):  # outer lip 48..59
        t = math.pi - 2.0 * math.pi * i / 12.0
        pts.append((0.28 * math.cos(t), cy + 0.38 - 0.1 * math.sin(t)))
    for i in range(8):  # inner lip 60..67
        t = math.pi - 2.0 * math.pi * i / 8.0
        pts.append((0.2 * math.cos(t), cy + 0.38 - 0.04 * math.sin(t)))
    assert len(pts) == 68
    return pts


def face_edges():
    e = [(i, i + 1) for i in range(16)]                      # jaw
    e += [(i, i + 1) for i in range(17, 21)]                 # right brow
    e += [(i, i + 1) for i in range(22, 26)]                 # left brow
    e += [(i, i + 1) for i in range(27, 30)]                 # nose bridge
    e += [(i, i + 1) for i in range(31, 35)] + [(30, 33)]    # nostrils
    e += [(36 + i, 36 + (i + 1) % 6) for i in range(6)]      # right eye
    e += [(42 + i, 42 + (i + 1) % 6) for i in range(6)]      # left eye
    e += [(48 + i, 48 + (i + 1) % 12) for i in range(12)]    # outer lip
    e += [(60 + i, 60 + (i + 1) % 8) for i in range(8)]      # inner lip
    # links between facial parts
    e += [(17, 36), (21, 39), (22, 42), (26, 45), (21, 27), (22, 27), (39, 27), (42, 27),
          (33, 51), (48, 60), (54, 64), (0, 17), (16, 26), (4, 48), (12, 54), (8, 57)]
    assert len(e) == 80
    return e


def hand_template(wrist, elbow):
    wx, wy = wrist
    dx, dy = wx - elbow[0], wy - elbow[1]
    norm = math.hypot(dx, dy)
    dx, dy = dx / norm, dy / norm
    root = (wx + 0.15 * dx, wy + 0.15 * dy)
    pts = [root]
    side = 1.0 if wx > 0 else -1.0
    for f in range(5):
        ang = side * (0.9 - 0.38 * f)
        fx = dx * math.cos(ang) - dy * math.sin(ang)
        fy = dx * math.sin(ang) + dy * math.cos(ang)
        base = 0.22 if f else 0.12
        for j in range(4):
            r = base + 0.12 * (j + 1)
            pts.append((root[0] + r * fx, root[1] + r * fy))
    return pts


def hand_edges():
    e = []
    for f in range(5):
        e.append((0, 1 + 4 * f))
        e += [(1 + 4 * f + j, 2 + 4 * f + j) for j in range(3)]
    return e


def wholebody():
    face = [f"face_{i}" for i in range(68)]
    hands = {}
    for side in ("left", "right"):
        names = [f"{side}_hand_root"]
        for f in FINGERS:
            names += [f"{side}_{f}{j}" for j in range(1, 5)]
        hands[side] = names
    keypoints = BODY + FOOT + face + hands["left"] + hands["right"]
    assert len(keypoints) == 133

    edges = [(BODY[a - 1], BODY[b - 1]) for a, b in COCO_SKELETON_1BASED]
    edges += [("left_ankle", t) for t in FOOT[:3]] + [("right_ankle", t) for t in FOOT[3:]]
    edges += [(face[a], face[b]) for a, b in face_edges()]
    # face anchored to the body head keypoints (subject's left eye is face 42..47)
    edges += [("nose", "face_30"), ("left_eye", "face_42"), ("right_eye", "face_39"),
              ("left_ear", "face_16"), ("right_ear", "face_0")]
    for side in ("left", "right"):
        h = hands[side]
        edges.append((f"{side}_wrist", h[0]))
        edges += [(h[a], h[b]) for a, b in hand_edges()]
    assert len(edges) == 152, len(edges)

    pos = dict(BODY_POS)
    pos["left_big_toe"] = (1.55, 0.35)
    pos["left_small_toe"] = (1.8, 0.3)
    pos["left_heel"] = (1.3, 0.15)
    pos["right_big_toe"] = (-1.55, 0.35)
    pos["right_small_toe"] = (-1.8, 0.3)
    pos["right_heel"] = (-1.3, 0.15)
    for name, p in zip(face, face_template()):
        pos[name] = p
    for side in ("left", "right"):
        for name, p in zip(hands[side], hand_template(BODY_POS[f"{side}_wrist"],
                                                      BODY_POS[f"{side}_elbow"])):
            pos[name] = p
    scale = 50.0
    pos = {k: (x * scale + 150.0, y * scale + 520.0) for k, (x, y) in pos.items()}

    multipliers = {k: 3.0 for k in BODY + FOOT}
    write("wholebody.skeleton.json",
          skeleton_doc("wholebody", keypoints, edges, multipliers))
    write("wholebody.layout.json", layout_doc("wholebody", pos))
    lengths = [math.dist(pos[a], pos[b]) for a, b in edges]
    write("wholebody.template_lengths.json",
          lengths_doc("wholebody", edges, lengths, "template pose distances, not dataset means"))


# --- car -------------------------------------------------------------------------

def car():
    L, W, H = 2.25, 0.9, 1.45
    pts = {}
    for sname, sy in (("left", 1.0), ("right", -1.0)):
        y = sy * W
        pts[f"{sname}_mirror"] = (0.55, y * 1.12, 1.0)
        for wname, wx in (("front", 1.35), ("rear", -1.35)):
            pts[f"{sname}_{wname}_arch_front"] = (wx + 0.4, y, 0.45)
            pts[f"{sname}_{wname}_arch_top"] = (wx, y, 0.8)
            pts[f"{sname}_{wname}_arch_rear"] = (wx - 0.4, y, 0.45)
        pts[f"{sname}_front_door_handle"] = (0.2, y, 0.9)
        pts[f"{sname}_rear_door_handle"] = (-0.6, y, 0.9)
        pts[f"{sname}_a_pillar_bottom"] = (0.7, y * 0.95, 1.0)
        pts[f"{sname}_a_pillar_top"] = (0.0, y * 0.8, H)
        pts[f"{sname}_c_pillar_bottom"] = (-1.5, y * 0.95, 1.0)
        pts[f"{sname}_c_pillar_top"] = (-1.0, y * 0.8, H)
        for end, ex in (("front", L), ("rear", -L)):
            light = "headlight" if end == "front" else "taillight"
            ly = sy * 0.55
            pts[f"{sname}_{light}_outer_top"] = (ex, ly + sy * 0.25, 0.85)
            pts[f"{sname}_{light}_inner_top"] = (ex, ly - sy * 0.15, 0.85)
            pts[f"{sname}_{light}_inner_bottom"] = (ex, ly - sy * 0.15, 0.7)
            pts[f"{sname}_{light}_outer_bottom"] = (ex, ly + sy * 0.25, 0.7)
            pts[f"{end}_plate_{sname}_top"] = (ex, sy * 0.25, 0.55)
            pts[f"{end}_plate_{sname}_bottom"] = (ex, sy * 0.25, 0.4)
            pts[f"{end}_bumper_{sname}"] = (ex - math.copysign(0.1, ex), y, 0.3)
            lid = "hood" if end == "front" else "trunk"
            pts[f"{lid}_{sname}_corner"] = (ex - math.copysign(0.15, ex), y * 0.9, 0.95)
        pts[f"{sname}_b_pillar_top"] = (-0.45, y * 0.8, H)
    pts["front_logo"] = (L, 0.0, 0.7)
    pts["rear_logo"] = (-L, 0.0, 0.75)
    pts["windshield_bottom_center"] = (0.75, 0.0, 1.0)
    pts["rear_window_bottom_center"] = (-1.55, 0.0, 1.0)
    pts["roof_center"] = (-0.5, 0.0, H)
    pts["front_grille_center"] = (L, 0.0, 0.6)
    names = sorted(pts)
    assert len(names) == 66, len(names)

    n = len(names)
    pairs = sorted((math.dist(pts[names[i]], pts[names[j]]), i, j)
                   for i in range(n) for j in range(i + 1, n))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    for d, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.add((i, j))
    for d, i, j in pairs:
        if len(chosen) == 108:
            break
        chosen.add((i, j))
    edges = [(names[i], names[j]) for i, j in sorted(chosen)]
    assert len(edges) == 108

    def project(p):
        x, y, z = p
        return (400.0 - 120.0 * x + 60.0 * y, 300.0 - 120.0 * z + 35.0 * y)

    pos = {k: project(pts[k]) for k in names}
    write("apollocar.skeleton.json", skeleton_doc("apollocar", names, edges))
    write("apollocar.layout.json", layout_doc("apollocar", pos))
    lengths = [math.dist(pts[a], pts[b]) for a, b in edges]
    write("apollocar.template_lengths.json",
          lengths_doc("apollocar", edges, lengths, "3D template distances, not dataset means"))


def loss_demo():
    doc = {
        "gamma": 2.0,
        "scale_spread": 1.0,
        "keypoints": [
            {"type": "a", "samples": [
                {"c": 1, "c_hat": 0.9, "v": [0.0, 0.0], "v_hat": [0.3, -0.4], "b_hat": 0.5,
                 "s": 2.0, "s_hat": 2.5},
                {"c": 0, "c_hat": 0.2, "v": [0.1, 0.1], "v_hat": [0.1, 0.1], "b_hat": 1.0,
                 "s": 1.0, "s_hat": 1.0}]},
            {"type": "b", "samples": [
                {"c": 1, "c_hat": 0.6, "v": [1.0, 0.0], "v_hat": [0.0, 0.0], "b_hat": 1.0,
                 "s": 1.0, "s_hat": 1.5}]},
            {"type": "c", "samples": [
                {"c": 1, "c_hat": 0.99, "v": [0.0, 0.0], "v_hat": [0.05, 0.0], "b_hat": 0.2,
                 "s": 3.0, "s_hat": 2.8}]},
        ],
    }
    write("p3.loss_samples.json", doc)


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    small_fixtures()
    wholebody()
    car()
    loss_demo()
