#pragma once

#include <string>
#include <vector>

namespace speechcmd::audio {

enum class Split { Train, Test };

const char* split_name(Split s);

struct ManifestEntry {
    std::string path;
    std::string label;
    std::string speaker_id;
    Split split = Split::Train;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::vector<std::string> vocabulary;

    std::size_t count(Split s) const;
};

// The reference corpus vocabulary: left, right, up, down.
const std::vector<std::string>& default_vocabulary();

// Loads a line-oriented manifest: `path,label,speaker_id,split` per line,
// `#` starts a comment. Labels must come from the vocabulary, paths must be
// unique, split must be train or test; violations are reported with their
// line number. An entry-free file is an error.
DatasetManifest load_manifest(const std::string& path,
                              const std::vector<std::string>& vocabulary = default_vocabulary());

}  // namespace speechcmd::audio
