# Copyright 2026 The paramine Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json, random
import sacrebleu
from sklearn.metrics import cohen_kappa_score

rng = random.Random(20261019)
vocab = ("the model we propose method results data task learning neural network "
         "translation word sentence paper show that our approach improves performance "
         "on benchmark using features training corpus").split()
pairs = []
for _ in range(100):
    a = [rng.choice(vocab) for _ in range(rng.randint(8, 30))]
    b = list(a)
    for _ in range(rng.randint(0, len(b))):
        op = rng.random()
        i = rng.randrange(len(b))
        if op < 0.4:
            b[i] = rng.choice(vocab)
        elif op < 0.7 and len(b) > 4:
            del b[i]
        else:
            b.insert(i, rng.choice(vocab))
    pairs.append((" ".join(a), " ".join(b)))
with open("bleu_pairs.tsv", "w") as f:
    for a, b in pairs:
        f.write(a + "\t" + b + "\n")

hyps = [a for a, _ in pairs]
refs = [b for _, b in pairs]
corpus = sacrebleu.corpus_bleu(hyps, [refs], tokenize="none", smooth_method="none").score
sent = [sacrebleu.sentence_bleu(a, [b], tokenize="none", smooth_method="exp").score for a, b in pairs]
kappa_rng = random.Random(7)
tables = []
for k in range(5):
    n = kappa_rng.randint(20, 60)
    w = [kappa_rng.randint(1, 5) for _ in range(n)]
    m = [x if kappa_rng.random() < 0.6 else kappa_rng.randint(1, 5) for x in w]
    tables.append({"w": w, "m": m, "kappa": cohen_kappa_score(w, m)})
json.dump({"corpus_bleu": corpus, "sentence_mean_bleu": sum(sent) / len(sent),
           "sentence_bleu": sent, "kappa_tables": tables}, open("oracle_values.json", "w"), indent=1)
print(corpus, sum(sent) / len(sent), [t["kappa"] for t in tables])
