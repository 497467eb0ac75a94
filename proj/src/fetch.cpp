#include "ecgscrub/fetch.hpp"
#include "ecgscrub/wfdb.hpp"

// httplib drags in resolver headers whose macros collide with identifiers
// in third-party templates, so it must come after everything else.
#ifdef ECGSCRUB_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ecgscrub {
namespace {

bool fetch_body(const std::string& scheme_host, const std::string& path, std::string& body,
                std::string& err) {
#ifndef ECGSCRUB_HAVE_OPENSSL
    if (scheme_host.starts_with("https://")) {
        err = "built without TLS support; use an http:// mirror via --base-url";
        return false;
    }
#endif
    httplib::Client cli(scheme_host);
    cli.set_follow_location(true);
    cli.set_connection_timeout(10, 0);
    cli.set_read_timeout(120, 0);
    const httplib::Result res = cli.Get(path);
    if (!res) {
        err = "request failed: " + httplib::to_string(res.error());
        return false;
    }
    if (res->status != 200) {
        err = "HTTP " + std::to_string(res->status);
        return false;
    }
    if (res->body.empty()) {
        err = "empty response body";
        return false;
    }
    body = res->body;
    return true;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::vector<std::string> record_files(const std::string& name) {
    return {name + ".hea", name + ".dat"};
}

std::string record_url_dir(const std::string& name, const std::string& base_url) {
    std::string base = base_url;
    while (!base.empty() && base.back() == '/') base.pop_back();
    const bool numeric =
        !name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(c); });
    if (numeric) return base + "/mitdb/1.0.0";
    if (name == "bw" || name == "ma" || name == "em") return base + "/nstdb/1.0.0";
    throw std::invalid_argument("unknown record name " + name +
                                " (expected an arrhythmia record number, or bw/ma/em)");
}

std::string default_base_url() { return "https://physionet.org/files"; }

std::vector<FetchItem> fetch_records(const std::vector<std::string>& names,
                                     const std::string& base_url,
                                     const std::filesystem::path& dest) {
    std::filesystem::create_directories(dest);
    std::vector<FetchItem> items;

    for (const std::string& name : names) {
        std::string dir;
        try {
            dir = record_url_dir(name, base_url);
        } catch (const std::exception& e) {
            items.push_back({name, false, e.what()});
            continue;
        }
        const auto scheme_end = dir.find('/', dir.find("//") + 2);
        const std::string scheme_host = dir.substr(0, scheme_end);
        const std::string dir_path = dir.substr(scheme_end);

        // header first: it tells us how long the signal file must be
        FetchItem hea_item{name + ".hea"};
        RecordHeader hdr;
        std::string body;
        if (!fetch_body(scheme_host, dir_path + "/" + name + ".hea", body, hea_item.message)) {
            items.push_back(hea_item);
            continue;
        }
        const std::filesystem::path hea_path = dest / (name + ".hea");
        write_file(hea_path, body);
        try {
            hdr = parse_header(hea_path);
            hea_item.ok = true;
            hea_item.message = std::to_string(body.size()) + " bytes";
        } catch (const std::exception& e) {
            std::filesystem::remove(hea_path);
            hea_item.message = std::string("downloaded header does not parse: ") + e.what();
            items.push_back(hea_item);
            continue;
        }
        items.push_back(hea_item);

        FetchItem dat_item{name + ".dat"};
        if (!fetch_body(scheme_host, dir_path + "/" + name + ".dat", body, dat_item.message)) {
            items.push_back(dat_item);
            continue;
        }
        const std::size_t total =
            static_cast<std::size_t>(hdr.n_samples) * static_cast<std::size_t>(hdr.n_signals);
        const std::size_t need = (total / 2) * 3 + (total % 2 ? 2 : 0);
        if (body.size() < need) {
            dat_item.message = "signal file too short: " + std::to_string(body.size()) +
                               " bytes, header promises " + std::to_string(need);
            items.push_back(dat_item);
            continue;
        }
        write_file(dest / (name + ".dat"), body);
        dat_item.ok = true;
        dat_item.message = std::to_string(body.size()) + " bytes";
        items.push_back(dat_item);
    }
    return items;
}

}  // namespace ecgscrub
