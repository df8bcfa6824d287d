"""The bundled corpus questions with their category tags.

Golden artifacts are produced by tools/gen_corpus.py and frozen under
src/placeql/data/corpus/ after review.
"""

QUESTIONS = [
    ("q01", "How many pharmacies are in 200 meter radius of High Street in Oxford?",
     ["count", "distance-radius", "containment"]),
    ("q02", "Which cities in England have at least two castles?",
     ["comparison", "aggregation", "containment"]),
    ("q03", "Where in the UK is Wolverhampton?", ["where-location", "containment"]),
    ("q04", "Which river crosses the most cities in England?",
     ["superlative", "aggregation", "situation"]),
    ("q05", "What is the largest city in UK except London?",
     ["superlative", "negation", "containment"]),
    ("q06", "Are there any rivers that cross both England and Wales?",
     ["yes-no", "conjunction", "situation"]),
    ("q07", "What are the towns or cities in Scotland?",
     ["conjunction", "containment"]),
    ("q08", "Which museums are in York?", ["containment"]),
    ("q09", "How many castles are in Wales?", ["count", "containment"]),
    ("q10", "Is Oxford in England?", ["yes-no", "containment"]),
    ("q11", "What is the longest river in England?",
     ["superlative", "containment"]),
    ("q12", "How far is Cambridge from London?", ["distance"]),
    ("q13", "Which hospitals are within 500 meter of Oxford Station?",
     ["distance-radius"]),
    ("q14", "Which parks are near the River Thames?", ["distance-radius"]),
    ("q15", "What is the population of Scotland?", ["property"]),
    ("q16", "Which cities in England have a population greater than 1000000?",
     ["comparison", "property", "containment"]),
    ("q17", "How many lakes are in Scotland?", ["count", "containment"]),
    ("q18", "Which counties border Oxfordshire?", ["situation"]),
    ("q19", "Which rivers flow through Oxford?", ["situation", "containment"]),
    ("q20", "What is the highest mountain in Scotland?",
     ["superlative", "containment"]),
    ("q21", "Is there a pharmacy in Headington?", ["yes-no", "containment"]),
    ("q22", "Which schools are in Cowley or Headington?",
     ["conjunction", "containment"]),
    ("q23", "Where is Ben Nevis?", ["where-location"]),
    ("q24", "How many counties does Wales have?", ["count", "situation"]),
    ("q25", "Which restaurants in Oxford are near Oxford Castle?",
     ["distance-radius", "containment"]),
    ("q26", "What is the smallest county in Wales?",
     ["superlative", "containment"]),
    ("q27", "Are there any castles in Cornwall?", ["yes-no", "containment"]),
    ("q28", "Which lakes are north of Glasgow?", ["direction"]),
    ("q29", "How many rivers cross Scotland?", ["count", "situation"]),
    ("q30", "Which cities in England have a cathedral?",
     ["situation", "containment"]),
    ("q31", "How many churches are there in Birmingham?",
     ["count", "containment"]),
    ("q32", "Which villages in Kent have a pub?", ["situation", "containment"]),
    ("q33", "What castles are in Scotland?", ["containment"]),
    ("q34", "Is Dublin in Ireland?", ["yes-no", "containment"]),
    ("q35", "Which supermarkets are within 300 meter of Oxford Castle?",
     ["distance-radius"]),
    ("q36", "What is the area of Wales?", ["property"]),
    ("q37", "Which banks are near Carfax Tower?", ["distance-radius"]),
    ("q38", "How many theatres are in London?", ["count", "containment"]),
    ("q39", "Which mountains in Wales are higher than 1000 meter?",
     ["comparison", "property", "containment"]),
    ("q40", "What are the lakes in Cumbria except Windermere?",
     ["negation", "containment"]),
    ("q41", "Which graveyards are in Oxford?", ["containment", "mapping"]),
    ("q42", "Which cities are south of Manchester?", ["direction"]),
]
