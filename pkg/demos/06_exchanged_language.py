"""Which substitution language do the valuation-parity letters follow?

The letter at n is 1 when the 2-adic valuation of n is even.  Checked
against the doubling substitution 0 -> 01, 1 -> 00 the raw convention fails
immediately, but after exchanging the two letters every observed window is
in the language.  Run with a larger --radius to push the check further out.
"""

import argparse

from weylab import Point, get_system
from weylab.systems.thuemorse import (PD_RULES, exchange_language,
                                      substitution_language,
                                      window_match_fraction)

parser = argparse.ArgumentParser()
parser.add_argument("--radius", type=int, default=1 << 14)
parser.add_argument("--max-length", type=int, default=10)
args = parser.parse_args()

system = get_system("toeplitz")
payload = system.parse_point("addr=int:0 flag=plain")
letters = system.coords(payload, -args.radius, args.radius)
print("letters around 0:", "".join(str(b) for b in letters[
    args.radius - 8 : args.radius + 9]))

print("%6s %12s %12s %8s" % ("len", "plain", "exchanged", "words"))
for length in range(1, args.max_length + 1):
    words = substitution_language(PD_RULES, length)
    plain = window_match_fraction(letters, words, length)
    swapped = window_match_fraction(letters, exchange_language(words), length)
    print("%6d %12.6f %12.6f %8d"
          % (length, float(plain), float(swapped), len(words)))
