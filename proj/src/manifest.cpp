#include "speechcmd/manifest.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::audio {

const char* split_name(Split s) { return s == Split::Train ? "train" : "test"; }

std::size_t DatasetManifest::count(Split s) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [s](const ManifestEntry& e) { return e.split == s; }));
}

const std::vector<std::string>& default_vocabulary() {
    static const std::vector<std::string> vocab = {"left", "right", "up", "down"};
    return vocab;
}

DatasetManifest load_manifest(const std::string& path, const std::vector<std::string>& vocabulary) {
    std::string text = read_text_file(path);
    std::istringstream in(text);

    DatasetManifest m;
    m.vocabulary = vocabulary;
    std::unordered_set<std::string> seen_paths;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;

        auto fields = split(t, ',');
        if (fields.size() != 4)
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected 4 comma-separated fields (path,label,speaker_id,split)");

        ManifestEntry e;
        e.path = trim(fields[0]);
        e.label = trim(fields[1]);
        e.speaker_id = trim(fields[2]);
        std::string split_str = trim(fields[3]);

        if (e.path.empty())
            throw DataError(path + ":" + std::to_string(line_no) + ": empty path");
        if (std::find(vocabulary.begin(), vocabulary.end(), e.label) == vocabulary.end())
            throw DataError(path + ":" + std::to_string(line_no) + ": label '" + e.label +
                            "' is not in the vocabulary");
        if (!seen_paths.insert(e.path).second)
            throw DataError(path + ":" + std::to_string(line_no) + ": duplicate path '" + e.path + "'");
        if (split_str == "train")
            e.split = Split::Train;
        else if (split_str == "test")
            e.split = Split::Test;
        else
            throw DataError(path + ":" + std::to_string(line_no) + ": split must be train or test, got '" +
                            split_str + "'");
        m.entries.push_back(std::move(e));
    }

    if (m.entries.empty()) throw DataError(path + ": manifest has no entries");
    return m;
}

}  // namespace speechcmd::audio
