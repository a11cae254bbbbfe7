from . import analyze, compare, cv, evaluate, ingest, predict, train
