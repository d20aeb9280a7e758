"""Isogenies, the Beauville isomorphism and the toric correspondences, with every sub-verdict."""

import dataclasses

from picard_fuchs.correspondences import (gkz_agreement, toric_to_inose, toric_to_weierstrass,
                                          verify_beauville_iso, verify_isogeny)


def show(title, report):
    print(f"== {title}: {'ok' if report.ok else 'NOT ok'}")
    for f in dataclasses.fields(report):
        print(f"   {f.name}: {getattr(report, f.name)}")


for n in (2, 3, 6):
    show(f"isogeny n={n}", verify_isogeny(n))
show("Beauville isomorphism", verify_beauville_iso())
show("toric curve", toric_to_weierstrass())
show("toric K3", toric_to_inose())
show("GKZ agreement", gkz_agreement())
