import time
from fractions import Fraction

from e8jacobi import config
from e8jacobi.orbitalg import load_tables, save_tables
from e8jacobi.genring import sakai_generators
import e8jacobi.structure as st

config.configure(cache_dir="/root/pkg/.cache")
load_tables()

for t, m1 in ((10, (1, 0, 0, 0, 0, 0, 0, 2)), (11, (0, 0, 0, 0, 0, 1, 0, 1))):
    t0 = time.time()
    sp = st.singular_solve(t, delta_power=3, trunc=9)
    print(f"t={t} D=3 trunc9: {time.time()-t0:.1f}s dim={sp.dimension}",
          flush=True)
    save_tables()
    got = sp.phi(m1)
    if got is None:
        print(f"  phi({m1}) = None", flush=True)
        continue
    form, coeff = got
    print(f"  phi coeff {coeff}", flush=True)
    for n in range(form.trunc):
        print(f"  q^{n}: {dict(sorted(form.coeffs[n].items()))}", flush=True)
save_tables()
