#include "ecgscrub/fetch.hpp"
#include "ecgscrub/wfdb.hpp"

#include "doctest.h"
#include "test_support.hpp"

// httplib must come after the library headers; its transitive resolver
// includes define macros that collide with identifiers in Eigen. The TLS
// switch must match the library's copy exactly (one-definition rule).
#ifdef ECGSCRUB_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <map>
#include <thread>

using namespace ecgscrub;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static int counter = 0;
    const fs::path dir =
        fs::temp_directory_path() / ("ecgscrub-fetch-" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string as_string(const std::vector<std::uint8_t>& bytes) {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

// Serves a canned file map under /files/... on a loopback port.
class LocalArchive {
public:
    explicit LocalArchive(std::map<std::string, std::string> files)
        : files_(std::move(files)) {
        server_.Get(R"(/files/.*)", [this](const httplib::Request& req, httplib::Response& res) {
            const auto hit = files_.find(req.path);
            if (hit == files_.end()) {
                res.status = 404;
                return;
            }
            res.set_content(hit->second, "application/octet-stream");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        REQUIRE(port_ > 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LocalArchive() {
        server_.stop();
        thread_.join();
    }
    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/files"; }

private:
    std::map<std::string, std::string> files_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace

TEST_SUITE_BEGIN("fetch");

TEST_CASE("records resolve to header plus signal file") {
    CHECK(record_files("100") == std::vector<std::string>{"100.hea", "100.dat"});
    CHECK(record_files("bw") == std::vector<std::string>{"bw.hea", "bw.dat"});
}

TEST_CASE("archive directories follow the public layout") {
    CHECK(record_url_dir("100", "http://x/files") == "http://x/files/mitdb/1.0.0");
    CHECK(record_url_dir("234", "http://x/files/") == "http://x/files/mitdb/1.0.0");
    CHECK(record_url_dir("bw", "http://x/files") == "http://x/files/nstdb/1.0.0");
    CHECK(record_url_dir("ma", "http://x/files") == "http://x/files/nstdb/1.0.0");
    CHECK(record_url_dir("em", "http://x/files") == "http://x/files/nstdb/1.0.0");
    CHECK_THROWS_WITH_AS(record_url_dir("abc", "http://x/files"),
                         doctest::Contains("unknown record name abc"), std::invalid_argument);
    CHECK(default_base_url() == "https://physionet.org/files");
}

TEST_CASE("fetching downloads, validates and stores record files") {
    // 4 samples: 995 996 -1 1000, checksum 2990
    const std::vector<std::int16_t> samples = {995, 996, -1, 1000};
    const std::string hea = "900 1 360 4\n900.dat 212 200 11 0 995 2990 0 MLII\n";
    LocalArchive archive({
        {"/files/mitdb/1.0.0/900.hea", hea},
        {"/files/mitdb/1.0.0/900.dat", as_string(encode_format212(samples))},
    });

    const fs::path dest = scratch_dir();
    const auto items = fetch_records({"900"}, archive.base_url(), dest);
    REQUIRE(items.size() == 2);
    CHECK(items[0].file == "900.hea");
    CHECK(items[0].ok);
    CHECK(items[0].message.find("bytes") != std::string::npos);
    CHECK(items[1].file == "900.dat");
    CHECK(items[1].ok);
    CHECK(fs::exists(dest / "900.hea"));
    CHECK(fs::exists(dest / "900.dat"));

    // the stored copy is a readable record
    const std::vector<Signal> leads = read_record(dest / "900.hea");
    REQUIRE(leads.size() == 1);
    CHECK(leads[0].size() == 4);
    CHECK(leads[0].samples[0] == doctest::Approx(995.0 / 200.0).epsilon(1e-12));
}

TEST_CASE("short signal files are rejected and not stored") {
    const std::string hea = "901 1 360 4\n901.dat 212 200 11 0 0 0 0 MLII\n";
    LocalArchive archive({
        {"/files/mitdb/1.0.0/901.hea", hea},
        {"/files/mitdb/1.0.0/901.dat", std::string("\x01\x02\x03", 3)},  // need 6 bytes
    });

    const fs::path dest = scratch_dir();
    const auto items = fetch_records({"901"}, archive.base_url(), dest);
    REQUIRE(items.size() == 2);
    CHECK(items[0].ok);
    CHECK(!items[1].ok);
    CHECK(items[1].message.find("too short") != std::string::npos);
    CHECK(!fs::exists(dest / "901.dat"));
}

TEST_CASE("unparseable headers are rejected and removed") {
    LocalArchive archive(std::map<std::string, std::string>{
        {"/files/mitdb/1.0.0/902.hea", "# only a comment, no record line\n"}});
    const fs::path dest = scratch_dir();
    const auto items = fetch_records({"902"}, archive.base_url(), dest);
    REQUIRE(items.size() == 1);
    CHECK(!items[0].ok);
    CHECK(items[0].message.find("does not parse") != std::string::npos);
    CHECK(!fs::exists(dest / "902.hea"));
}

TEST_CASE("missing files and unknown names are reported per item") {
    LocalArchive archive({});
    const fs::path dest = scratch_dir();
    const auto items = fetch_records({"903", "zz"}, archive.base_url(), dest);
    REQUIRE(items.size() == 2);
    CHECK(!items[0].ok);
    CHECK(items[0].message.find("HTTP 404") != std::string::npos);
    CHECK(!items[1].ok);
    CHECK(items[1].message.find("unknown record name") != std::string::npos);
}

TEST_SUITE_END();
