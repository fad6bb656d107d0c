import math

import torch
import torch.nn as nn

# attention
def attention(query, keys, values, W_a=None):
    """
    ----------
    - Luong "general" attention for a batch of queries
    - query (B, Hq), keys and values (B, K, Hk), W_a (Hq, Hk); W_a None means a plain dot score
    - Returns (context (B, Hk), weights (B, K)); weights are a softmax over the K keys
    ----------
    """

    if(W_a is not None):
        query = query @ W_a

    scores = torch.einsum("bh,bkh->bk", query, keys)
    weights = torch.softmax(scores, dim=-1)
    context = torch.einsum("bk,bkh->bh", weights, values)

    return context, weights

# GeneralAttention
class GeneralAttention(nn.Module):
    # __init__
    def __init__(self, query_width, key_width, generator=None):
        super(GeneralAttention, self).__init__()

        self.query_width = query_width
        self.key_width = key_width

        bound = 1.0 / math.sqrt(query_width)
        W_a = torch.empty((query_width, key_width), dtype=torch.float64)
        W_a.uniform_(-bound, bound, generator=generator)
        self.W_a = nn.Parameter(W_a)

    # forward
    def forward(self, query, keys):
        return attention(query, keys, keys, self.W_a)

    # to_string
    def to_string(self):
        return "ATTN: query: %d  key: %d  score: general" % (self.query_width, self.key_width)
