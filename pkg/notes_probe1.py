import time
from fractions import Fraction

from e8jacobi import config
from e8jacobi.orbitalg import load_tables, save_tables
from e8jacobi.genring import sakai_generators
import e8jacobi.structure as st

config.configure(cache_dir="/root/pkg/.cache")
load_tables()

t0 = time.time()
gens = sakai_generators(6)
print(f"gens6: {time.time()-t0:.1f}s")

for t, trunc in ((1, 3), (2, 4), (3, 4), (4, 5)):
    t0 = time.time()
    mod = st.module_generators(t, trunc=trunc, gens=gens)
    print(f"module t={t}: {time.time()-t0:.1f}s rank={mod.rank} "
          f"poly={mod.weight_poly()}")

for t in (5, 6, 7):
    t0 = time.time()
    kw = {}
    if t == 6:
        kw["trunc"] = 7
    if t == 7:
        kw["trunc"] = 8
    sp = st.singular_solve(t, gens=gens, **kw)
    print(f"singular t={t}: {time.time()-t0:.1f}s dim={sp.dimension}")

save_tables()
