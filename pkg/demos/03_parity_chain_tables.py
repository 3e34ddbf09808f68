"""Classify the three maps of the parity chain and try to decompose the
composite through its own legs.

The chain forgets a parity bit, then an almost one-to-one coordinate: the
first leg is equicontinuous and distal, the second is Banach proximal, but
their composite is neither, and the decomposition check reports exactly
which leg breaks when the roles are swapped.
"""

from weylab import classify_factor_map, dyadic_schedule, verify_decomposition

FLAGS = ("equicontinuous", "mean_equicontinuous", "property_M",
         "banach_proximal", "proximal", "distal", "banach_distal")


def main():
    sched = dyadic_schedule(10, 14)
    table = {}
    for map_id in ("tm.phi", "tm.psi", "tm.pi"):
        table[map_id] = classify_factor_map(map_id, sched, seed=3,
                                            pair_count=12, sequence_count=3)

    print("%-22s %8s %8s %8s" % ("flag", "phi", "psi", "pi"))
    for flag in FLAGS:
        row = [getattr(table[m], flag) for m in ("tm.phi", "tm.psi", "tm.pi")]
        print("%-22s %8s %8s %8s" % ((flag,) + tuple(str(v) for v in row)))
    for map_id, c in table.items():
        for w in c.warnings:
            print("warning (%s): %s" % (map_id, w))

    # pi = psi o phi holds on payloads, but the regularity split fails in
    # both directions: phi is the distal leg and psi the proximal one,
    # the wrong way round for a topo-isomorphic-then-equicontinuous split
    rep = verify_decomposition("tm.pi", "tm.phi", "tm.psi",
                               dyadic_schedule(8, 12), seed=5,
                               pair_count=10, sequence_count=3)
    print("\ncomposite splits as (proximal leg) then (equicontinuous leg):",
          rep.passed)
    print("  " + rep.note)


if __name__ == "__main__":
    main()
