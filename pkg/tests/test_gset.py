"""G-sets, spans over Omega, and Burnside composition."""

import numpy as np

from mackeyalg.grp import cyclic, subgroup_lattice, symmetric
from mackeyalg.gset import (BurnsideElt, GSet, OmegaComponents,
                            canonical_span_label, compose_spans,
                            identity_span, span_from_label)


def test_orbits_and_stabilizers():
    G = symmetric(3)
    lat = subgroup_lattice(G)
    for S in lat.subgroups:
        X = GSet(G, lat.cosact[S.id])
        orbs = X.orbits()
        assert len(orbs) == 1                      # transitive
        assert len(X.stabilizer(0)) == S.order     # point stabilizer


def test_omega_size():
    G = cyclic(2)
    om = OmegaComponents(G)
    # Omega = C2/1 u C2/C2: three points
    assert sum(G.order // om.lat.subgroups[s].order
               for s in range(len(om.lat.subgroups))) == 3


def test_identity_span_is_unit():
    G = symmetric(3)
    om = OmegaComponents(G)
    ident = identity_span(om)
    # composing the identity span with any basic span changes nothing
    for H_sid in range(len(om.lat.subgroups)):
        basic = span_from_label(om, (H_sid, H_sid, 0, H_sid))
        out = compose_spans(om, ident, basic)
        # the result is the single original label with coefficient 1
        items = out.sorted_items()
        nz = [(k, c) for k, c in items if c]
        assert len(nz) == 1 and nz[0][1] == 1


def test_composition_matches_mackey_dim():
    # the number of distinct span labels for C2 is the Mackey dimension 6
    G = cyclic(2)
    om = OmegaComponents(G)
    labels = set()
    lat = om.lat
    for H in range(len(lat.subgroups)):
        Hm = set(lat.subgroups[H].members)
        for L in range(len(lat.subgroups)):
            for x in range(G.order):
                xLx = {G.conj(x, l) for l in lat.subgroups[L].members}
                for K in range(len(lat.subgroups)):
                    Km = set(lat.subgroups[K].members)
                    if Km <= Hm and Km <= xLx:
                        sp = span_from_label(om, (H, K, x, L))
                        labels.add(canonical_span_label(om, sp))
    assert len(labels) == 6
