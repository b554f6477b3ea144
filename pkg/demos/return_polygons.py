"""Identity return polygons: examples, an impostor, and small searches."""
from lamkit.polygons import (
    analyze_orbit_sigma3,
    example_period2,
    example_period3,
    example_sigma4_quadrilateral,
    impostor_triangle,
    is_identity_return,
    search_irp,
)

for d in (3, 4):
    o = example_period3(d)
    print(f"period 3 under sigma_{d}: {' -> '.join(str(P) for P in o.polygons)}  [{o.verdict.reason}]")
o = example_period2(4)
print(f"period 2 under sigma_4: {' -> '.join(str(P) for P in o.polygons)}")

qa = example_sigma4_quadrilateral()
print(f"quadrilateral side stays {qa.min_distance} away from critical chords")

v = is_identity_return(3, impostor_triangle(), 2)
print(f"impostor {impostor_triangle()}: {v.reason} ({v.detail})")

res = search_irp(3, 3, 4)
print(f"triangles of period 4 under sigma_3: {len(res.orbits)} ({res.status})")
cases = {}
for orb in res.orbits:
    for ap in analyze_orbit_sigma3(orb).approaches:
        cases[ap.case] = cases.get(ap.case, 0) + 1
print("approach cases seen:", dict(sorted(cases.items())))
print("quadrilaterals of period <= 5:", sum(len(search_irp(3, 4, p).orbits) for p in range(1, 6)))
