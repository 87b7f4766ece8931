"""Coverage sweeps: where the panel helps and where it does not.

A sweep evaluates the SNR gain over the no-panel baseline at every receiver
grid point. On the level deployment the column-binary panel lifts most of the
map by double digits; raising the panel and AP (scenario 3) makes columns
incoherent and carves out a large no-benefit region.
"""

from irssim import Scheme, irs_for_scenario, scenario_preset
from irssim.experiments import cdf, fraction_at_or_below, median_gain_db, sweep

for sid in (1, 3):
    sc = scenario_preset(sid)
    geom = irs_for_scenario(sc)
    result = sweep(sc, geom, Scheme.COLUMN_BINARY, scenario_id=sid)
    gains = result.gains_db
    print(f"scenario {sid}, column-binary, {len(result.positions)} receivers:")
    print(f"  median gain      {median_gain_db(result):6.2f} dB")
    print(f"  best / worst     {gains.max():6.2f} / {gains.min():6.2f} dB")
    print(f"  at or below 0 dB {fraction_at_or_below(result, 0.0):6.1%}")
    print(f"  at least 10 dB   {(gains >= 10.0).mean():6.1%}")

    series = cdf(result)
    for q in (0.25, 0.5, 0.75):
        idx = (series.fractions >= q).argmax()
        print(f"  {q:.0%} of receivers at or below {series.values[idx]:.2f} dB")
    print()

# scheme ladder on the level deployment, medians only
sc = scenario_preset(1)
geom = irs_for_scenario(sc)
print("scenario 1 median gain by scheme:")
for scheme in Scheme:
    result = sweep(sc, geom, scheme, scenario_id=1)
    print(f"  {scheme.value:<18} {median_gain_db(result):6.2f} dB")
