#!/usr/bin/env python3
"""Regenerate the bundled fixtures: word vectors, toy KB, gazetteer names.

Deterministic (fixed seed). The KB is a miniature UK/Ireland: countries and
counties are boxes, cities are smaller boxes inside them, POIs are points,
rivers are linestrings that deliberately do or do not cross borders. The
word-vector table is cluster-structured so that plural surface forms sit
close to their ontology labels, the pharmacy cluster reproduces the
three-way mapping fixture, and unrelated labels stay far apart.
"""

import math
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "placeql" / "data"
DIM = 32
SEED = 20240817


# --------------------------------------------------------------------------
# vectors
# --------------------------------------------------------------------------

def _unit(vec):
    norm = math.sqrt(sum(x * x for x in vec))
    return [x / norm for x in vec]


def _noisy(rng, base, spread):
    noise = [rng.gauss(0.0, spread) for _ in base]
    return _unit([b + n for b, n in zip(base, noise)])


# cluster -> (members, spread); the base token gets the cluster center
TYPE_CLUSTERS = [
    ["city", "cities"], ["town", "towns"], ["village", "villages"],
    ["suburb", "suburbs"], ["county", "counties"], ["country", "countries"],
    ["river", "rivers"], ["lake", "lakes"], ["mountain", "mountains"],
    ["castle", "castles"], ["museum", "museums"], ["park", "parks"],
    ["school", "schools"], ["hospital", "hospitals"],
    ["restaurant", "restaurants"], ["bank", "banks"],
    ["supermarket", "supermarkets"], ["church", "churches"],
    ["cathedral", "cathedrals"], ["theatre", "theatres"], ["pub", "pubs"],
    ["street", "streets"], ["station", "stations"], ["tower", "towers"],
    ["library", "libraries"], ["hotel", "hotels"], ["cafe", "cafes"],
    ["cemetery"],
    ["buy", "purchase"], ["see", "observe"],
]


def gen_vectors():
    rng = random.Random(SEED)
    rows = []
    used = {}

    def add(token, vec):
        used[token] = vec
        rows.append((token, vec))

    for cluster in TYPE_CLUSTERS:
        base = _unit([rng.gauss(0.0, 1.0) for _ in range(DIM)])
        add(cluster[0], base)
        for member in cluster[1:]:
            add(member, _noisy(rng, base, 0.05))

    # pharmacy cluster: the plural surface form must match the drugstore,
    # veterinary and pharmacy labels at >= 0.85, nothing else
    base = _unit([rng.gauss(0.0, 1.0) for _ in range(DIM)])
    add("pharmacies", _noisy(rng, base, 0.02))
    add("drugstore", _noisy(rng, base, 0.04))
    add("veterinary", _noisy(rng, base, 0.10))
    add("pharmacy", _noisy(rng, base, 0.12))

    # graveyard cluster: no ontology label is near it, but the cemetery
    # glossary is written with these words so the glossary stage fires
    base = _unit([rng.gauss(0.0, 1.0) for _ in range(DIM)])
    add("graveyard", base)
    add("graveyards", _noisy(rng, base, 0.05))
    add("burial", _noisy(rng, base, 0.08))
    add("buried", _noisy(rng, base, 0.08))

    _sanity_check(used)
    lines = ["# token<TAB>v1 v2 ... v%d (unit vectors, seed %d)" % (DIM, SEED)]
    for token, vec in rows:
        lines.append("%s\t%s" % (token, " ".join("%.6f" % v for v in vec)))
    (DATA / "vectors.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return used


def _cos(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sanity_check(vecs):
    # within-cluster pairs that the mapping fixtures rely on
    need_close = [
        ("pharmacies", "drugstore"), ("pharmacies", "veterinary"),
        ("pharmacies", "pharmacy"), ("cities", "city"),
        ("graveyards", "burial"), ("graveyards", "buried"),
        ("purchase", "buy"), ("observe", "see"),
    ]
    for a, b in need_close:
        c = _cos(vecs[a], vecs[b])
        assert c >= 0.87, "expected %s~%s close, cos=%.3f" % (a, b, c)
    bases = [c[0] for c in TYPE_CLUSTERS] + ["pharmacies", "graveyard"]
    for i, a in enumerate(bases):
        for b in bases[i + 1:]:
            c = _cos(vecs[a], vecs[b])
            assert abs(c) < 0.75, "clusters %s/%s too close: %.3f" % (a, b, c)
    assert _cos(vecs["graveyards"], vecs["cemetery"]) < 0.80


# --------------------------------------------------------------------------
# toy knowledge base
# --------------------------------------------------------------------------

def box(lon1, lat1, lon2, lat2):
    return ("POLYGON((%g %g, %g %g, %g %g, %g %g, %g %g))"
            % (lon1, lat1, lon2, lat1, lon2, lat2, lon1, lat2, lon1, lat1))


def point(lon, lat):
    return "POINT(%g %g)" % (lon, lat)


def line(*pts):
    return "LINESTRING(%s)" % ", ".join("%g %g" % p for p in pts)


ONTOLOGY = [
    # uri, label, kind, glossary  (file order is mapping-result order)
    ("yago:wordnet_drugstore_103249342", "drugstore", "type",
     "a shop selling medicines and remedies"),
    ("geont:OSM_amenity_veterinary", "veterinary", "type",
     "a clinic treating sick animals"),
    ("geont:OSM_amenity_pharmacy", "pharmacy", "type",
     "a shop dispensing prescription medicines"),
    ("geont:OSM_place_city", "city", "type", "a large settlement"),
    ("geont:OSM_place_town", "town", "type", "a settlement smaller than a city"),
    ("geont:OSM_place_village", "village", "type", "a small rural settlement"),
    ("geont:OSM_place_suburb", "suburb", "type", "a residential district of a city"),
    ("geont:OSM_place_county", "county", "type", "an administrative division"),
    ("geont:OSM_place_country", "country", "type", "a sovereign or constituent nation"),
    ("geont:OSM_waterway_river", "river", "type", "a natural watercourse"),
    ("geont:OSM_natural_water", "lake", "type", "an inland body of standing water"),
    ("geont:OSM_natural_peak", "mountain", "type", "a prominent natural summit"),
    ("geont:OSM_historic_castle", "castle", "type", "a fortified historic residence"),
    ("geont:OSM_tourism_museum", "museum", "type", "an institution exhibiting collections"),
    ("geont:OSM_leisure_park", "park", "type", "a public green space"),
    ("geont:OSM_amenity_school", "school", "type", "an institution for educating children"),
    ("geont:OSM_amenity_hospital", "hospital", "type", "an institution providing medical care"),
    ("geont:OSM_amenity_restaurant", "restaurant", "type", "a place serving meals"),
    ("geont:OSM_amenity_bank", "bank", "type", "a financial institution branch"),
    ("geont:OSM_shop_supermarket", "supermarket", "type", "a large self-service food shop"),
    ("geont:OSM_amenity_place_of_worship", "church", "type", "a building for worship"),
    ("geont:OSM_building_cathedral", "cathedral", "type", "the principal church of a diocese"),
    ("geont:OSM_amenity_theatre", "theatre", "type", "a venue for performing arts"),
    ("geont:OSM_amenity_pub", "pub", "type", "an establishment serving drinks"),
    ("geont:OSM_highway_street", "street", "type", "a named urban road"),
    ("geont:OSM_railway_station", "station", "type", "a railway stop for passengers"),
    ("geont:OSM_historic_tower", "tower", "type", "a tall historic structure"),
    ("geont:OSM_landuse_cemetery", "cemetery", "type",
     "a burial ground where people are buried"),
    ("geont:OSM_amenity_library", "library", "type", "a building lending books"),
    ("geont:OSM_tourism_hotel", "hotel", "type", "an establishment with paid lodging"),
    ("geont:OSM_amenity_cafe", "cafe", "type", "an informal place serving coffee"),
    ("geont:OSM_shop_bakery", "bakery", "type", "a shop baking and selling bread"),
    ("geont:OSM_shop_butcher", "butcher", "type", "a shop selling fresh meat"),
    ("geont:OSM_shop_books", "bookshop", "type", "a shop selling books"),
    ("geont:hasPopulation", "population", "property", "number of inhabitants"),
    ("geont:hasArea", "area", "property", "surface area in square kilometers"),
    ("geont:hasLength", "length", "property", "length in kilometers"),
    ("geont:hasElevation", "elevation", "property", "height above sea level in meters"),
    ("geont:hasFoundingDate", "date", "property", "year of founding"),
]

T = {label: uri for uri, label, kind, _ in ONTOLOGY if kind == "type"}


def build_entities():
    ents = []  # (uri, [labels], type_uri|None, wkt|None, {prop: value})

    def ent(uri, labels, type_label, wkt, **props):
        if isinstance(labels, str):
            labels = [labels]
        type_uri = T[type_label] if type_label else None
        ents.append((uri, labels, type_uri, wkt, props))

    # countries
    ent("yago:England", "England", "country", box(-3.0, 50.0, 1.8, 55.8),
        hasPopulation=56500000, hasArea=130279)
    ent("yago:Wales", "Wales", "country", box(-5.3, 51.3, -3.0, 53.4),
        hasPopulation=3130000, hasArea=20779)
    ent("yago:Scotland", "Scotland", "country", box(-5.0, 55.8, -2.0, 58.7),
        hasPopulation=5463300, hasArea=77933)
    ent("yago:United_Kingdom", ["United Kingdom", "UK"], "country",
        box(-6.5, 49.8, 2.0, 59.2), hasPopulation=67000000, hasArea=242495)
    ent("yago:Ireland", "Ireland", "country", box(-10.5, 51.4, -7.0, 55.5),
        hasPopulation=5120000, hasArea=70273)

    # English counties
    ent("yago:Oxfordshire", "Oxfordshire", "county", box(-1.6, 51.5, -0.9, 52.2),
        hasPopulation=691000, hasArea=2605)
    ent("yago:Kent", "Kent", "county", box(0.2, 51.0, 1.4, 51.5),
        hasPopulation=1580000, hasArea=3736)
    ent("yago:Essex", "Essex", "county", box(0.0, 51.5, 1.2, 52.0),
        hasPopulation=1490000, hasArea=3670)
    ent("yago:Devon", "Devon", "county", box(-2.9, 50.2, -2.2, 50.9),
        hasPopulation=810000, hasArea=6707)
    ent("yago:Cornwall", "Cornwall", "county", box(-2.2, 50.1, -1.5, 50.5),
        hasPopulation=570000, hasArea=3563)
    ent("yago:Cumbria", "Cumbria", "county", box(-3.0, 54.2, -2.2, 54.9),
        hasPopulation=500000, hasArea=6768)
    ent("yago:Yorkshire", "Yorkshire", "county", box(-1.8, 53.6, -0.5, 54.4),
        hasPopulation=5400000, hasArea=11903)
    ent("yago:Surrey", "Surrey", "county", box(-0.6, 51.1, 0.0, 51.4),
        hasPopulation=1200000, hasArea=1663)
    ent("yago:Hampshire", "Hampshire", "county", box(-1.5, 50.8, -0.7, 51.3),
        hasPopulation=1400000, hasArea=3769)
    # share an edge with Oxfordshire so bordering queries have answers
    ent("yago:Buckinghamshire", "Buckinghamshire", "county",
        box(-0.9, 51.5, -0.3, 52.2), hasPopulation=555000, hasArea=1874)
    ent("yago:Berkshire", "Berkshire", "county", box(-1.6, 51.3, -0.9, 51.5),
        hasPopulation=920000, hasArea=1262)
    # Welsh counties
    ent("yago:Gwynedd", "Gwynedd", "county", box(-5.0, 52.7, -4.0, 53.3),
        hasPopulation=117000, hasArea=2548)
    ent("yago:Powys", "Powys", "county", box(-3.9, 51.9, -3.1, 52.6),
        hasPopulation=133000, hasArea=5181)
    ent("yago:Ceredigion", "Ceredigion", "county", box(-4.9, 52.0, -4.0, 52.6),
        hasPopulation=71000, hasArea=1795)
    # Scottish counties
    ent("yago:Highland", "Highland", "county", box(-4.9, 56.8, -3.9, 58.4),
        hasPopulation=235000, hasArea=25657)
    ent("yago:Fife", "Fife", "county", box(-3.5, 56.0, -2.8, 56.4),
        hasPopulation=372000, hasArea=1325)

    # cities (boxes)
    cities = [
        ("yago:Oxford", "Oxford", -1.36, 51.70, -1.16, 51.80, 152000, 46),
        ("yago:London", "London", -0.32, 51.38, 0.08, 51.62, 8800000, 1572),
        ("yago:Birmingham", "Birmingham", -2.00, 52.40, -1.80, 52.56, 1140000, 268),
        ("yago:Manchester", "Manchester", -2.34, 53.40, -2.14, 53.56, 550000, 116),
        ("yago:Wolverhampton", "Wolverhampton", -2.18, 52.55, -2.08, 52.63, 263000, 69),
        ("yago:Cambridge", "Cambridge", 0.07, 52.16, 0.17, 52.24, 145000, 41),
        ("yago:Leeds", "Leeds", -1.60, 53.74, -1.46, 53.84, 790000, 552),
        ("yago:Liverpool", "Liverpool", -2.95, 53.36, -2.85, 53.44, 500000, 112),
        ("yago:Bristol", "Bristol", -2.70, 51.42, -2.54, 51.50, 465000, 110),
        ("yago:York", "York", -1.13, 53.92, -1.03, 54.00, 210000, 272),
        ("yago:Edinburgh", "Edinburgh", -3.26, 55.90, -3.12, 55.99, 520000, 264),
        ("yago:Glasgow", "Glasgow", -4.31, 55.82, -4.19, 55.90, 635000, 175),
        ("yago:Cardiff", "Cardiff", -3.25, 51.44, -3.11, 51.53, 360000, 140),
        ("yago:Swansea", "Swansea", -4.00, 51.58, -3.88, 51.66, 245000, 380),
        ("yago:Dublin", "Dublin", -8.60, 53.30, -8.40, 53.41, 560000, 115),
        ("yago:Cork", "Cork", -9.10, 51.85, -8.95, 51.94, 210000, 187),
    ]
    for uri, name, lon1, lat1, lon2, lat2, pop, area in cities:
        ent(uri, name, "city", box(lon1, lat1, lon2, lat2),
            hasPopulation=pop, hasArea=area)
    # duplicate OSM representation of Oxford (no type, same extent)
    ent("yago2geo:OSM_Oxford813", "Oxford", None, box(-1.36, 51.70, -1.16, 51.80))

    # towns (Scotland ones matter for the towns-or-cities question)
    ent("yago2geo:OSM_StAndrews", "St Andrews", "town", box(-2.95, 56.30, -2.90, 56.36),
        hasPopulation=17000, hasArea=9)
    ent("yago2geo:OSM_Oban", "Oban", "town", box(-4.84, 56.38, -4.78, 56.44),
        hasPopulation=8500, hasArea=7)
    ent("yago2geo:OSM_Inverness", "Inverness", "town", box(-4.26, 57.45, -4.18, 57.51),
        hasPopulation=47000, hasArea=18)
    ent("yago2geo:OSM_Windsor", "Windsor", "town", box(-0.64, 51.46, -0.58, 51.50),
        hasPopulation=32000, hasArea=10)

    # suburbs of Oxford
    ent("yago2geo:OSM_Cowley411", "Cowley", "suburb", box(-1.24, 51.72, -1.20, 51.745))
    ent("yago2geo:OSM_Headington412", "Headington", "suburb", box(-1.22, 51.75, -1.18, 51.78))

    # villages in Kent
    ent("yago2geo:OSM_Chilham", "Chilham", "village", box(0.95, 51.24, 0.99, 51.27))
    ent("yago2geo:OSM_Headcorn", "Headcorn", "village", box(0.60, 51.16, 0.64, 51.19))
    ent("yago2geo:OSM_Chartham", "Chartham", "village", box(1.00, 51.27, 1.04, 51.30))

    # rivers (lengths in km)
    ent("yago:River_Thames", "River Thames", "river",
        line((-1.45, 51.78), (-1.30, 51.755), (-1.26, 51.75), (-1.20, 51.74),
             (-0.90, 51.60), (-0.30, 51.50), (-0.076, 51.508), (0.30, 51.47),
             (0.60, 51.47)), hasLength=346)
    ent("yago:River_Severn", "River Severn", "river",
        line((-3.60, 52.50), (-3.20, 52.35), (-2.80, 52.20), (-2.50, 52.00),
             (-2.30, 51.80)), hasLength=354)
    ent("yago:River_Wye", "River Wye", "river",
        line((-3.80, 52.30), (-3.30, 52.15), (-2.90, 52.00), (-2.60, 51.60)),
        hasLength=215)
    ent("yago:River_Tweed", "River Tweed", "river",
        line((-2.90, 55.70), (-2.60, 55.78), (-2.40, 55.90)), hasLength=156)
    ent("yago:River_Esk", "River Esk", "river",
        line((-3.20, 56.00), (-3.00, 55.85), (-2.80, 55.70)), hasLength=80)
    ent("yago:River_Cherwell", "River Cherwell", "river",
        line((-1.27, 51.90), (-1.26, 51.76), (-1.25, 51.74)), hasLength=64)
    ent("yago:River_Clyde", "River Clyde", "river",
        line((-4.40, 55.85), (-4.25, 55.87), (-4.00, 55.90)), hasLength=176)
    ent("yago:River_Shannon", "River Shannon", "river",
        line((-9.80, 53.50), (-9.50, 53.00), (-9.30, 52.60)), hasLength=360)

    # High Streets (the two the mapping fixture needs, in file order)
    ent("yago2geo:OSM_HighStreet246", "High Street", "street",
        line((-1.258, 51.752), (-1.251, 51.751)))
    ent("yago2geo:OSM_HighStreet301", "High Street", "street",
        line((-0.120, 51.510), (-0.115, 51.512)))

    # pharmacies: three within 200 m of the Oxford High Street, others far
    ent("yago2geo:OSM_Pharmacy201", "Boots High Street", "pharmacy",
        point(-1.2570, 51.7526))
    ent("yago2geo:OSM_Pharmacy202", "Carfax Pharmacy", "pharmacy",
        point(-1.2535, 51.7504))
    ent("yago2geo:OSM_Pharmacy203", "Eastgate Pharmacy", "pharmacy",
        point(-1.2490, 51.7515))
    ent("yago2geo:OSM_Pharmacy204", "Jericho Pharmacy", "pharmacy",
        point(-1.2700, 51.7560))
    ent("yago2geo:OSM_Pharmacy205", "Headington Pharmacy", "pharmacy",
        point(-1.1900, 51.7600))
    ent("yago2geo:OSM_Pharmacy206", "Strand Pharmacy", "pharmacy",
        point(-0.1195, 51.5105))
    ent("yago2geo:OSM_Pharmacy207", "Brixton Pharmacy", "pharmacy",
        point(-0.2000, 51.4500))
    ent("yago2geo:OSM_Pharmacy208", "Mill Road Pharmacy", "pharmacy",
        point(0.1250, 52.2100))
    ent("yago2geo:OSM_Veterinary209", "Leeds Veterinary Clinic", "veterinary",
        point(-1.5500, 53.8000))

    # castles
    ent("yago2geo:OSM_OxfordCastle", "Oxford Castle", "castle", point(-1.2630, 51.7510))
    ent("yago:Tower_of_London", "Tower of London", "castle", point(-0.0760, 51.5080))
    ent("yago2geo:OSM_BaynardCastle", "Baynard Castle", "castle", point(-0.1000, 51.5100))
    ent("yago:York_Castle", "York Castle", "castle", point(-1.0800, 53.9550))
    ent("yago2geo:OSM_CliffordTower", "Clifford Tower", "castle", point(-1.0820, 53.9560))
    ent("yago:Windsor_Castle", "Windsor Castle", "castle", point(-0.6000, 51.4800))
    ent("yago:Edinburgh_Castle", "Edinburgh Castle", "castle", point(-3.2000, 55.9480))
    ent("yago:Cardiff_Castle", "Cardiff Castle", "castle", point(-3.1810, 51.4820))
    ent("yago:Caernarfon_Castle", "Caernarfon Castle", "castle", point(-4.2800, 53.1400))
    ent("yago:Conwy_Castle", "Conwy Castle", "castle", point(-4.3000, 53.2800))
    ent("yago:Harlech_Castle", "Harlech Castle", "castle", point(-4.1100, 52.8600))
    ent("yago:Tintagel_Castle", "Tintagel Castle", "castle", point(-1.7500, 50.3000))

    # mountains (elevations in meters)
    ent("yago:Ben_Nevis", "Ben Nevis", "mountain", point(-4.50, 57.10), hasElevation=1345)
    ent("yago:Ben_Macdui", "Ben Macdui", "mountain", point(-3.95, 57.07), hasElevation=1309)
    ent("yago:Snowdon", "Snowdon", "mountain", point(-4.08, 53.07), hasElevation=1085)
    ent("yago:Cadair_Idris", "Cadair Idris", "mountain", point(-4.20, 52.90), hasElevation=893)
    ent("yago:Pen_y_Fan", "Pen y Fan", "mountain", point(-3.43, 51.88), hasElevation=886)
    ent("yago:Scafell_Pike", "Scafell Pike", "mountain", point(-2.70, 54.45), hasElevation=978)

    # lakes
    ent("yago:Loch_Ness", "Loch Ness", "lake", point(-4.30, 57.30))
    ent("yago:Loch_Lomond", "Loch Lomond", "lake", point(-4.60, 56.10))
    ent("yago:Loch_Tay", "Loch Tay", "lake", point(-4.10, 56.50))
    ent("yago:Windermere", "Windermere", "lake",
        box(-2.57, 54.33, -2.53, 54.38))
    ent("yago:Ullswater", "Ullswater", "lake", point(-2.65, 54.55))
    ent("yago:Derwentwater", "Derwentwater", "lake", point(-2.95, 54.60))

    # parks
    ent("yago2geo:OSM_ChristChurchMeadow", "Christ Church Meadow", "park",
        point(-1.2530, 51.7480))
    ent("yago:Hyde_Park", "Hyde Park", "park", point(-0.1650, 51.5070))
    ent("yago2geo:OSM_PortMeadow", "Port Meadow", "park", point(-1.2620, 51.7560))
    ent("yago2geo:OSM_HeatonPark", "Heaton Park", "park", point(-2.2500, 53.5300))

    # museums
    ent("yago2geo:OSM_YorkshireMuseum", "Yorkshire Museum", "museum",
        point(-1.0860, 53.9610))
    ent("yago2geo:OSM_JorvikCentre", "Jorvik Centre", "museum",
        point(-1.0810, 53.9570))
    ent("yago:Ashmolean_Museum", "Ashmolean Museum", "museum",
        point(-1.2600, 51.7550))

    # stations, towers
    ent("yago2geo:OSM_OxfordStation77", "Oxford Station", "station",
        point(-1.2700, 51.7535))
    ent("yago2geo:OSM_CarfaxTower", "Carfax Tower", "tower",
        point(-1.2580, 51.7519))

    # hospitals: one within 500 m of Oxford Station
    ent("yago2geo:OSM_Hospital301", "Castle Mound Hospital", "hospital",
        point(-1.2720, 51.7550))
    ent("yago2geo:OSM_Hospital302", "Churchill Hospital", "hospital",
        point(-1.2100, 51.7400))
    ent("yago2geo:OSM_Hospital303", "Radcliffe Infirmary", "hospital",
        point(-1.2600, 51.7450))

    # schools
    ent("yago2geo:OSM_School311", "St Gregory School", "school", point(-1.2200, 51.7300))
    ent("yago2geo:OSM_School312", "Cheney School", "school", point(-1.2100, 51.7600))
    ent("yago2geo:OSM_School313", "Magdalen College School", "school",
        point(-1.2470, 51.7470))

    # banks near Carfax Tower plus one far away
    ent("yago2geo:OSM_Bank321", "Lloyds Cornmarket", "bank", point(-1.2574, 51.7522))
    ent("yago2geo:OSM_Bank322", "Barclays Carfax", "bank", point(-1.2590, 51.7512))
    ent("yago2geo:OSM_Bank323", "Kings Parade Bank", "bank", point(0.1180, 52.2050))

    # supermarkets: one within 300 m of Oxford Castle
    ent("yago2geo:OSM_Supermarket331", "Westgate Grocer", "supermarket",
        point(-1.2645, 51.7522))
    ent("yago2geo:OSM_Supermarket332", "Botley Road Market", "supermarket",
        point(-1.2580, 51.7470))
    ent("yago2geo:OSM_Supermarket333", "Camden Market Hall", "supermarket",
        point(-0.1450, 51.5390))

    # restaurants: one in Oxford near the castle, one in Oxford far, one out
    ent("yago2geo:OSM_Restaurant341", "The Mound Grill", "restaurant",
        point(-1.2635, 51.7515))
    ent("yago2geo:OSM_Restaurant342", "Headington Kitchen", "restaurant",
        point(-1.2000, 51.7650))
    ent("yago2geo:OSM_Restaurant343", "Soho Diner", "restaurant",
        point(-0.1320, 51.5130))

    # churches in Birmingham plus one elsewhere
    ent("yago2geo:OSM_Church351", "St Martin in the Bull Ring", "church",
        point(-1.8930, 52.4780))
    ent("yago2geo:OSM_Church352", "Aston Parish Church", "church",
        point(-1.9100, 52.5000))
    ent("yago2geo:OSM_Church353", "St Mary the Virgin", "church",
        point(-1.2570, 51.7530))

    # cathedrals
    ent("yago:St_Pauls_Cathedral", "St Pauls Cathedral", "cathedral",
        point(-0.0980, 51.5140))
    ent("yago:York_Minster", "York Minster", "cathedral", point(-1.0820, 53.9620))
    ent("yago:Christ_Church_Cathedral", "Christ Church Cathedral", "cathedral",
        point(-1.2550, 51.7500))
    ent("yago:Llandaff_Cathedral", "Llandaff Cathedral", "cathedral",
        point(-3.2180, 51.4950))

    # theatres in London plus one elsewhere
    ent("yago2geo:OSM_Theatre361", "Globe Theatre", "theatre", point(-0.0970, 51.5080))
    ent("yago2geo:OSM_Theatre362", "Old Vic", "theatre", point(-0.1090, 51.5020))
    ent("yago2geo:OSM_Theatre363", "Lyceum Theatre", "theatre", point(-0.1200, 51.5110))
    ent("yago2geo:OSM_Theatre364", "New Theatre Oxford", "theatre",
        point(-1.2610, 51.7545))

    # pubs inside (or outside) the Kent villages
    ent("yago2geo:OSM_Pub371", "White Horse Inn", "pub", point(0.9700, 51.2550))
    ent("yago2geo:OSM_Pub372", "Artichoke", "pub", point(1.0200, 51.2850))
    ent("yago2geo:OSM_Pub373", "Turf Tavern", "pub", point(-1.2540, 51.7550))

    # cemeteries
    ent("yago2geo:OSM_Cemetery381", "Wolvercote Cemetery", "cemetery",
        point(-1.3000, 51.7800))
    ent("yago2geo:OSM_Cemetery382", "Highgate Cemetery", "cemetery",
        point(-0.1470, 51.5660))

    # generic per-city POIs to reach toy-KB scale (types no corpus question
    # counts); offsets keep them away from every distance fixture
    pad_types = [("library", "Library"), ("hotel", "Hotel"), ("cafe", "Cafe"),
                 ("bakery", "Bakery"), ("butcher", "Butchers"),
                 ("bookshop", "Bookshop")]
    for uri, name, lon1, lat1, lon2, lat2, _, _ in cities:
        base_lon = (lon1 + lon2) / 2 + 0.028
        base_lat = (lat1 + lat2) / 2 + 0.022
        for k, (type_label, suffix) in enumerate(pad_types):
            ent("yago2geo:OSM_%s%s" % (name.replace(" ", ""), suffix),
                "%s %s" % (name, suffix), type_label,
                point(round(base_lon + 0.003 * k, 4), round(base_lat, 4)))

    return ents


def write_kb(ents):
    lines = ["# toy knowledge base: triples, geometries, ontology"]
    lines.append("# ontology: URI<TAB>label<TAB>kind<TAB>glossary")
    for uri, label, kind, glossary in ONTOLOGY:
        lines.append("%s\t%s\t%s\t%s" % (uri, label, kind, glossary))
    lines.append("# entities")
    for uri, labels, type_uri, wkt, props in ents:
        for label in labels:
            lines.append('%s\trdfs:label\t"%s"' % (uri, label))
        if type_uri:
            lines.append("%s\trdf:type\t%s" % (uri, type_uri))
        if wkt:
            lines.append('%s\tgeo:asWKT\t"%s"' % (uri, wkt))
        for prop, value in props.items():
            lines.append('%s\tgeont:%s\t"%s"' % (uri, prop, value))
    (DATA / "toykb.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_names(ents):
    lines = ["# gazetteer: name<TAB>kind"]
    seen = set()
    for uri, labels, type_uri, wkt, props in ents:
        for label in labels:
            if label not in seen:
                seen.add(label)
                lines.append("%s\tplace" % label)
    (DATA / "lexicons" / "names.tsv").write_text("\n".join(lines) + "\n",
                                                 encoding="utf-8")


def main():
    gen_vectors()
    ents = build_entities()
    write_kb(ents)
    write_names(ents)
    print("entities: %d" % len(ents))
    print("wrote %s" % (DATA / "toykb.tsv"))


if __name__ == "__main__":
    main()
