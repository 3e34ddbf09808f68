"""Density view of proximality: how often is the orbit pair eps-close?

banach_density reports, per window, the worst-translate fraction of sample
times with d < eps.  A Banach proximal pair pushes the fraction to 1 for
every eps; a pair at constant distance 1 stays at 0; in between sits the
almost-everywhere agreement of neighbouring codings.
"""

from weylab import (Point, banach_density, default_schedule, get_system,
                    weyl)
from weylab.dyadic import DyadicInteger
from weylab.systems.thuemorse import complement

sched = default_schedule(12)


def profile(label, x, y):
    w = weyl(x, y, sched)
    print("%s  (weyl = %.6f)" % (label, w.value))
    for eps in (0.5, 0.1, 0.02):
        e = banach_density(x, y, eps, sched)
        print("  eps = %-4g  density = %.6f" % (eps, e.value))


toep = get_system("toeplitz")
profile("toeplitz fibre pair, address 0",
        Point("toeplitz", toep.parse_point("addr=int:0 flag=plain")),
        Point("toeplitz", toep.parse_point("addr=int:0 flag=primed")))

x = Point("thuemorse", (DyadicInteger.from_int(0), 0, 0))
profile("\nparity complement pair (constant distance 1)",
        x, Point("thuemorse", complement(x.payload)))

profile("\nneighbouring golden codings, offset 3",
        Point("sturmian", (0, 0)), Point("sturmian", (3, 0)))
