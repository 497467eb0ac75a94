#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ecgscrub {

struct FetchItem {
    std::string file;  // e.g. "100.hea"
    bool ok = false;
    std::string message;
};

// The files that make up one record: header plus signal file.
std::vector<std::string> record_files(const std::string& name);

// URL directory for a record under the public archive layout: numeric names
// live in the arrhythmia set, bw/ma/em in the noise stress test set.
std::string record_url_dir(const std::string& name, const std::string& base_url);

std::string default_base_url();

// Downloads each record's files into dest. Headers must parse and signal
// files must be at least as long as the header promises, or the item is
// reported failed and removed. https needs the TLS-enabled build.
std::vector<FetchItem> fetch_records(const std::vector<std::string>& names,
                                     const std::string& base_url,
                                     const std::filesystem::path& dest);

}  // namespace ecgscrub
