# %% [markdown]
# # The catalog of tabulated denominators
#
# Only entry 48 ships with a Cartan matrix. Other entries can be checked
# once a matrix is supplied through an override file.

# %%
from pathlib import Path

from hyperpoincare.catalog import load_catalog, render_table, verify_catalog

cat = load_catalog()
print(render_table(cat[:8]))

# %%
reports = verify_catalog([cat[0], cat[47]])
for r in reports:
    print(r.id, r.status, r.reason or "")

# %% A rank-3 matrix supplied externally for entry 25
override = Path(__file__).resolve().parent.parent / "tests" / "data" / "rank3_override.json"
e = load_catalog(override)[24]
print(e.display(), verify_catalog([e])[0].status)
