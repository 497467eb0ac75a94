#include "ecgscrub/wfdb.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ecgscrub {
namespace {

std::vector<std::string> significant_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open header file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

// gain field may look like "200", "200(1024)" or "200(1024)/mV"
void parse_gain_field(const std::string& field, SignalInfo& info, bool& baseline_set) {
    std::string num = field;
    if (const auto slash = num.find('/'); slash != std::string::npos)
        num = num.substr(0, slash);
    if (const auto paren = num.find('('); paren != std::string::npos) {
        const auto close = num.find(')', paren);
        info.baseline = std::stoi(num.substr(paren + 1, close - paren - 1));
        baseline_set = true;
        num = num.substr(0, paren);
    }
    info.gain = std::stod(num);
    if (info.gain <= 0.0) info.gain = 200.0;  // WFDB convention for "unknown"
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open signal file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

}  // namespace

RecordHeader parse_header(const std::filesystem::path& hea_path) {
    const std::vector<std::string> lines = significant_lines(hea_path);
    if (lines.empty())
        throw std::runtime_error("empty header: " + hea_path.string());

    RecordHeader hdr;
    {
        std::istringstream ss(lines[0]);
        if (!(ss >> hdr.record_name >> hdr.n_signals))
            throw std::runtime_error("malformed record line in " + hea_path.string());
        if (!(ss >> hdr.fs)) hdr.fs = 250.0;  // WFDB default
        ss >> hdr.n_samples;                  // optional; 0 means unknown
    }
    if (hdr.n_signals < 1)
        throw std::runtime_error("header declares no signals: " + hea_path.string());
    if (static_cast<std::size_t>(hdr.n_signals) + 1 > lines.size())
        throw std::runtime_error("header truncated: " + hea_path.string());

    for (int s = 0; s < hdr.n_signals; ++s) {
        std::istringstream ss(lines[1 + s]);
        SignalInfo info;
        std::string fmt_field, gain_field;
        if (!(ss >> info.file_name >> fmt_field >> gain_field))
            throw std::runtime_error("malformed signal line in " + hea_path.string());
        // strip the optional xN / :skew / +offset decorations
        info.format = std::stoi(fmt_field);
        bool baseline_set = false;
        parse_gain_field(gain_field, info, baseline_set);
        ss >> info.adc_resolution >> info.adc_zero >> info.init_value >> info.checksum;
        if (!baseline_set) info.baseline = info.adc_zero;
        std::string word, desc;
        int skip = 0;
        while (ss >> word) {
            // block_size is the first trailing integer; everything after is
            // the free-text description
            if (skip == 0) {
                ++skip;
                continue;
            }
            desc += desc.empty() ? word : " " + word;
        }
        info.description = desc;
        hdr.signals.push_back(std::move(info));
    }
    return hdr;
}

std::vector<std::int16_t> decode_format212(const std::vector<std::uint8_t>& bytes,
                                           std::size_t sample_count) {
    const std::size_t pairs = sample_count / 2;
    const std::size_t need = pairs * 3 + (sample_count % 2 ? 2 : 0);
    if (bytes.size() < need) {
        throw std::runtime_error("signal file truncated: need " + std::to_string(need) +
                                 " bytes, have " + std::to_string(bytes.size()) +
                                 " (offset " + std::to_string(bytes.size()) + ")");
    }
    auto sign_extend = [](int v) -> std::int16_t {
        return static_cast<std::int16_t>(v & 0x800 ? v - 0x1000 : v);
    };
    std::vector<std::int16_t> out(sample_count);
    for (std::size_t p = 0; p < pairs; ++p) {
        const std::uint8_t b0 = bytes[3 * p], b1 = bytes[3 * p + 1], b2 = bytes[3 * p + 2];
        out[2 * p] = sign_extend(((b1 & 0x0F) << 8) | b0);
        out[2 * p + 1] = sign_extend(((b1 & 0xF0) << 4) | b2);
    }
    if (sample_count % 2)
        out.back() = sign_extend(((bytes[pairs * 3 + 1] & 0x0F) << 8) | bytes[pairs * 3]);
    return out;
}

std::vector<std::uint8_t> encode_format212(const std::vector<std::int16_t>& samples) {
    std::vector<std::uint8_t> out;
    out.reserve((samples.size() / 2) * 3 + 2);
    auto to12 = [](std::int16_t v) -> int {
        if (v < -2048 || v > 2047)
            throw std::invalid_argument("sample out of 12-bit range");
        return v & 0xFFF;
    };
    std::size_t i = 0;
    for (; i + 1 < samples.size(); i += 2) {
        const int s1 = to12(samples[i]), s2 = to12(samples[i + 1]);
        out.push_back(static_cast<std::uint8_t>(s1 & 0xFF));
        out.push_back(static_cast<std::uint8_t>(((s1 >> 8) & 0x0F) | ((s2 >> 8) << 4)));
        out.push_back(static_cast<std::uint8_t>(s2 & 0xFF));
    }
    if (i < samples.size()) {
        const int s1 = to12(samples[i]);
        out.push_back(static_cast<std::uint8_t>(s1 & 0xFF));
        out.push_back(static_cast<std::uint8_t>((s1 >> 8) & 0x0F));
    }
    return out;
}

std::vector<Signal> read_record(const std::filesystem::path& hea_path, ReadOptions opts) {
    const RecordHeader hdr = parse_header(hea_path);
    if (hdr.n_samples <= 0)
        throw std::runtime_error("header lacks a sample count: " + hea_path.string());

    // group signals by their backing file, preserving lead order
    std::map<std::string, std::vector<int>> by_file;
    for (int s = 0; s < hdr.n_signals; ++s)
        by_file[hdr.signals[s].file_name].push_back(s);

    std::vector<Signal> leads(hdr.n_signals);
    for (const auto& [file_name, owners] : by_file) {
        for (int s : owners) {
            if (hdr.signals[s].format != 212)
                throw std::runtime_error("unsupported format " +
                                         std::to_string(hdr.signals[s].format) + " in " +
                                         file_name);
        }
        const std::filesystem::path dat = hea_path.parent_path() / file_name;
        const std::vector<std::uint8_t> bytes = read_bytes(dat);
        const std::size_t total = static_cast<std::size_t>(hdr.n_samples) * owners.size();
        const std::vector<std::int16_t> adus = decode_format212(bytes, total);

        for (std::size_t k = 0; k < owners.size(); ++k) {
            const SignalInfo& info = hdr.signals[owners[k]];
            Eigen::ArrayXd mv(hdr.n_samples);
            long long checksum = 0;
            for (long long i = 0; i < hdr.n_samples; ++i) {
                const std::int16_t adu = adus[static_cast<std::size_t>(i) * owners.size() + k];
                checksum += adu;
                mv[i] = (static_cast<double>(adu) - info.baseline) / info.gain;
            }
            const auto expect = static_cast<std::int16_t>(info.checksum);
            const auto got = static_cast<std::int16_t>(checksum & 0xFFFF);
            if (got != expect && opts.warnings) {
                opts.warnings->push_back("checksum mismatch on " + info.description + ": header " +
                                         std::to_string(expect) + ", data " + std::to_string(got));
            }
            leads[owners[k]] = Signal{std::move(mv), hdr.fs};
        }
    }
    return leads;
}

Signal read_csv(const std::filesystem::path& path, double fs) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(line, &pos);
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
            if (pos != line.size()) throw std::invalid_argument("trailing text");
            values.push_back(v);
        } catch (const std::exception&) {
            if (line_no == 1 && values.empty()) continue;  // single header line allowed
            throw std::runtime_error("non-numeric value at " + path.string() + ":" +
                                     std::to_string(line_no));
        }
    }
    if (values.empty())
        throw std::runtime_error("no samples in " + path.string());
    return {Eigen::Map<Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size()))
                .eval(),
            fs};
}

void write_csv(const std::filesystem::path& path, const Signal& signal,
               const std::string& header_comment) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out.precision(17);
    for (Eigen::Index i = 0; i < signal.size(); ++i) out << signal.samples[i] << "\n";
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path data_dir() {
    if (const char* dir = std::getenv("ECGSCRUB_DATA_DIR"); dir && *dir)
        return std::filesystem::path(dir);
    return std::filesystem::path("data");
}

std::optional<std::filesystem::path> find_record(const std::string& name) {
    const std::filesystem::path hea = data_dir() / (name + ".hea");
    if (std::filesystem::exists(hea)) return hea;
    return std::nullopt;
}

}  // namespace ecgscrub
