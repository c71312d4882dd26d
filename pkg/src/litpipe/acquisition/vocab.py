"""Shipped expansion tables: synonyms, acronyms, related terms.

These tables drive the fully offline, deterministic query-expansion path.
They are intentionally small and curated for the LLM-research domain; an
optional generation-provider hook can supplement them at runtime.
"""
from __future__ import annotations

# Token-level synonym substitutions (casefolded keys).
SYNONYMS = {
    "llm": ["language model", "foundation model"],
    "llms": ["language models", "foundation models"],
    "agents": ["agent systems", "autonomous agents"],
    "agent": ["agent system", "autonomous agent"],
    "survey": ["review", "overview"],
    "alignment": ["preference alignment", "value alignment"],
    "clustering": ["cluster analysis", "grouping"],
    "embedding": ["vector representation", "dense representation"],
    "embeddings": ["vector representations", "dense representations"],
    "evaluation": ["assessment", "benchmarking"],
    "generation": ["synthesis", "production"],
    "retrieval": ["search", "information retrieval"],
    "reasoning": ["inference", "logical reasoning"],
    "multimodal": ["multi-modal", "vision-language"],
    "finetuning": ["fine-tuning", "adaptation"],
    "tuning": ["adaptation", "optimization"],
    "data": ["datasets", "corpora"],
    "learning": ["training", "optimization"],
}

# Acronym <-> expansion pairs; applied in both directions.
ACRONYMS = {
    "llm": "large language model",
    "llms": "large language models",
    "rag": "retrieval-augmented generation",
    "rlhf": "reinforcement learning from human feedback",
    "icl": "in-context learning",
    "nlp": "natural language processing",
    "rl": "reinforcement learning",
    "ml": "machine learning",
    "ai": "artificial intelligence",
    "cot": "chain-of-thought",
    "mllm": "multimodal large language model",
    "sft": "supervised fine-tuning",
    "dpo": "direct preference optimization",
    "kg": "knowledge graph",
    "qa": "question answering",
    "ir": "information retrieval",
    "vlm": "vision-language model",
    "gan": "generative adversarial network",
    "moe": "mixture of experts",
    "ner": "named entity recognition",
}

# Token-level related technical terms.
RELATED = {
    "agents": ["agent architectures", "multi-agent systems", "tool use"],
    "agent": ["agent architectures", "multi-agent systems", "tool use"],
    "alignment": ["human feedback", "preference optimization", "safety"],
    "clustering": ["unsupervised learning", "topic modeling"],
    "retrieval": ["dense retrieval", "semantic search"],
    "reasoning": ["chain-of-thought", "planning"],
    "tuning": ["instruction following", "parameter-efficient tuning"],
    "synthetic": ["data augmentation", "data generation"],
    "multimodal": ["vision-language pretraining", "image-text models"],
    "evaluation": ["benchmarks", "metrics"],
    "safety": ["red teaming", "robustness"],
}

# Generic related-term templates; sized so expansion always reaches 20
# queries even for topics absent from every table.
RELATED_TEMPLATES = [
    "{t} survey",
    "{t} review",
    "{t} methods",
    "{t} applications",
    "{t} benchmark",
    "{t} evaluation",
    "{t} framework",
    "{t} models",
    "{t} systems",
    "{t} techniques",
    "{t} challenges",
    "{t} advances",
    "{t} architectures",
    "recent progress in {t}",
]

BOOLEAN_TEMPLATES = [
    '"{t}" AND survey',
    '"{t}" AND evaluation',
    '"{t}" AND benchmark',
    '"{t}" AND applications',
    '"{t}" AND methods',
    '"{t}" OR "{t} systems"',
    '"{t}" AND challenges',
    '"{t}" AND "future directions"',
]
