"""Combinatorial plane embeddings: rotation systems, faces, radial structure.

An embedding stores, per vertex, the clockwise cyclic order of its incident
underlying-undirected edge slots, identified by arc index (an antiparallel
arc pair is two parallel edges, hence two slots).  Faces are traced with the
standard next-after-twin rule; Euler's formula is checked per connected
component.  The radial structure is the bipartite vertex/face incidence
multigraph whose edges are the corners of the embedding; every noose is a
cycle in it.  Each arc is surrounded by a quadrilateral of four corners, and
two arcs are dual-adjacent when their quadrilaterals share a corner; this
dual is what region splitting and noose separation checks flood-fill over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import DiGraph
from .errors import ValidationError


@dataclass
class Embedding:
    rotations: dict  # vertex -> clockwise tuple of incident arc indices

    def __post_init__(self):
        self.rotations = {int(v): tuple(r) for v, r in self.rotations.items()}

    def restricted(self, vertices, arc_map):
        """Rotations for a sub-multigraph, renumbering arcs by arc_map.

        arc_map[new_index] = old_index; slots not in arc_map are dropped.
        """
        back = {old: new for new, old in enumerate(arc_map)}
        return Embedding({v: tuple(back[i] for i in self.rotations[v] if i in back)
                          for v in vertices})


@dataclass
class PlaneGraph:
    """A validated embedded graph with derived face and corner data.

    Half-edges are (arc index, departing endpoint); face ids index `faces`.
    A corner (v, k) sits between rotation slots k and k+1 at v and is the
    radial edge between v and the face traced through it.
    """

    graph: DiGraph
    embedding: Embedding
    faces: tuple            # face id -> tuple of half-edges
    face_of: dict           # half-edge -> face id
    corner_face: dict       # corner (v, k) -> face id
    face_corners: dict      # face id -> tuple of corners in walk order

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def face_vertices(self, fid) -> tuple:
        return tuple(v for _, v in self.faces[fid])

    def rotation(self, v) -> tuple:
        return self.embedding.rotations.get(v, ())

    def quad_nodes(self, i):
        """The radial quadrilateral around arc i as (u, f_left, v, f_right)."""
        u, v = self.graph.arcs[i]
        return (u, self.face_of[(i, u)], v, self.face_of[(i, v)])

    def quad_corners(self, i):
        u, v = self.graph.arcs[i]
        pu = self.rotation(u).index(i)
        pv = self.rotation(v).index(i)
        du, dv = len(self.rotation(u)), len(self.rotation(v))
        return ((u, (pu - 1) % du), (v, pv), (v, (pv - 1) % dv), (u, pu))

    def corner_quads(self, corner):
        """The two arcs whose quadrilaterals contain this corner."""
        v, k = corner
        rot = self.rotation(v)
        return (rot[k], rot[(k + 1) % len(rot)])

    def vertex_face_corners(self, v, fid) -> tuple:
        """All corners of v lying on face fid (several at cut vertices)."""
        return tuple(c for c in self.vertex_corners(v) if self.corner_face[c] == fid)

    def vertex_corners(self, v) -> tuple:
        return tuple((v, k) for k in range(len(self.rotation(v))))

    def incidence_count(self) -> int:
        return sum(len(walk) for walk in self.faces)


def validate_embedding(g: DiGraph, emb: Embedding) -> PlaneGraph:
    """Trace facial walks and check Euler's formula per component.

    Raises ValidationError on dangling or missing rotation slots and on any
    component violating n - m + f = 2.
    """
    rot = emb.rotations
    for v in sorted(g.vertices):
        slots = rot.get(v, ())
        if sorted(slots) != sorted(g.incident_arcs(v)):
            raise ValidationError(
                f"rotation of vertex {v} does not match its incident arcs")
    pos = {}
    for v in g.vertices:
        for k, i in enumerate(rot.get(v, ())):
            pos[(v, i)] = k

    def next_halfedge(h):
        i, frm = h
        a, b = g.arcs[i]
        w = b if frm == a else a
        slots = rot[w]
        k = pos[(w, i)]
        j = slots[(k + 1) % len(slots)]
        return (j, w), (w, k)

    faces = []
    face_of = {}
    corner_face = {}
    face_corners = {}
    # enumerate by underlying endpoints so face ids ignore arc orientation
    all_halfedges = [(i, e) for i, (u, v) in enumerate(g.arcs)
                     for e in (min(u, v), max(u, v))]
    for h0 in all_halfedges:
        if h0 in face_of:
            continue
        fid = len(faces)
        walk = []
        corners = []
        h = h0
        while True:
            walk.append(h)
            face_of[h] = fid
            h, corner = next_halfedge(h)
            corner_face[corner] = fid
            corners.append(corner)
            if h == h0:
                break
        faces.append(tuple(walk))
        face_corners[fid] = tuple(corners)
    # Euler per weakly connected component of the underlying graph
    comp = {}
    for root in sorted(g.vertices):
        if root in comp:
            continue
        comp[root] = root
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp[w] = root
                    stack.append(w)
    per = {}
    for root in set(comp.values()):
        per[root] = [0, 0, 0]
    for v, root in comp.items():
        per[root][0] += 1
    for u, v in g.arcs:
        per[comp[u]][1] += 1
    for fid, walk in enumerate(faces):
        per[comp[walk[0][1]]][2] += 1
    for root, (nc, mc, fc) in sorted(per.items()):
        if mc == 0:
            fc = 1  # a lone vertex sees one face, which no walk traces
        if nc - mc + fc != 2:
            raise ValidationError(
                f"component of vertex {root} violates Euler's formula: "
                f"{nc} - {mc} + {fc} != 2")
    return PlaneGraph(g, emb, tuple(faces), face_of, corner_face, face_corners)


@dataclass
class RadialGraph:
    """Vertex/face incidence multigraph of an embedded graph.

    Nodes are ('v', vertex) and ('f', face id); every corner of the embedding
    is one radial edge, so the edge count equals the total facial-walk
    incidences (2m).
    """

    plane: PlaneGraph

    def nodes(self):
        g = self.plane.graph
        return ([("v", v) for v in sorted(g.vertices)]
                + [("f", fid) for fid in range(self.plane.n_faces)])

    def corner_endpoints(self, corner):
        v, _ = corner
        return ("v", v), ("f", self.plane.corner_face[corner])

    def corners(self):
        g = self.plane.graph
        return [c for v in sorted(g.vertices) for c in self.plane.vertex_corners(v)]

    def incident_corners(self, node):
        kind, x = node
        if kind == "v":
            return self.plane.vertex_corners(x)
        return self.plane.face_corners[x]

    def other_end(self, corner, node):
        a, b = self.corner_endpoints(corner)
        return b if node == a else a

    @property
    def edge_count(self) -> int:
        return len(self.corners())


def radial_graph(g: DiGraph, emb: Embedding) -> RadialGraph:
    return RadialGraph(validate_embedding(g, emb))
