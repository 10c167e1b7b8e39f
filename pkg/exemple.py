from adhmkit.adhm.flow import psi_vanishing_report, report_summary, run_flows
from adhmkit.floer.complexes import homology_dims, mapping_cone, random_chain_map, random_complex
from adhmkit.series.laurent import evaluate_at_one, sw_series
from adhmkit.utils import make_rng

flows = run_flows(k=2, runs=10, seed=0)
table = psi_vanishing_report(flows)
table.to_csv('runs.csv', index=False)

rng = make_rng(0)
f = random_chain_map(random_complex(rng), random_complex(rng), rng)

print('FLOWS:', report_summary(table))
print('CONE HOMOLOGY:', homology_dims(mapping_cone(f)))
print('SW SERIES g=2:', sw_series(2, (-3, 3)).to_dict(), '->', evaluate_at_one(sw_series(2, (-3, 3)), 2))
