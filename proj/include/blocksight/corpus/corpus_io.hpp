#ifndef BLOCKSIGHT_CORPUS_CORPUS_IO_HPP
#define BLOCKSIGHT_CORPUS_CORPUS_IO_HPP

#include <string>

#include "blocksight/corpus/builder.hpp"

namespace blocksight::corpus {

// Corpus directory layout:
//   dataset.csv    end-of-run summaries, label_placeholder column filled in
//   streams.csv    every interval row of every retained run, same columns
//   manifest.jsonl one record per execution (including discarded ones)
//   meta.json      version tag, seed, interval size, exclusions
void save_corpus(const Corpus& corpus, const std::string& dir);

Corpus load_corpus(const std::string& dir);

// Just the labeled end-of-run dataset from a corpus directory.
LabeledDataset load_dataset(const std::string& dir);

}  // namespace blocksight::corpus

#endif
