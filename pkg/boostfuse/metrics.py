import prometheus_client

DEFAULT_BUCKETS = (
    0.005,
    0.01,
    0.025,
    0.05,
    0.075,
    0.1,
    0.25,
    0.5,
    0.75,
    1.0,
    2.5,
    5.0,
    7.5,
    10.0,
    30.0,
    float('+inf'),
)

# histogram_quantile(0.99, sum(rate(
# boostfuse_stage_latency_seconds_bucket[1m])) by (le, method))
STAGE_LATENCY = prometheus_client.Histogram(
    'boostfuse_stage_latency_seconds',
    'Wall time of training and evaluation stages in seconds',
    ['method', 'stage'],
    buckets=DEFAULT_BUCKETS,
)

TREES_BUILT = prometheus_client.Counter(
    'boostfuse_trees_built_total',
    'Number of regression trees grown',
    ['learner'],
)
