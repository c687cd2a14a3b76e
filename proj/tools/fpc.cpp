// fpc: context-MTF compressor, MTF baseline, entropy analyzer and de Bruijn generator.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "fpc/commands.hpp"

namespace {

using fpc::container::AlphabetMode;
using fpc::container::CodecId;

std::istream& open_input(const std::string& path, std::unique_ptr<std::ifstream>& holder)
{
    if (path == "-")
        return std::cin;
    holder = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*holder)
        throw fpc::Error("cannot open input '" + path + "'");
    return *holder;
}

std::ostream& open_output(const std::string& path, std::unique_ptr<std::ofstream>& holder)
{
    if (path == "-")
        return std::cout;
    holder = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*holder)
        throw fpc::Error("cannot open output '" + path + "'");
    return *holder;
}

}  // namespace

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    CLI::App app{"One-pass context-MTF compression toolkit"};
    app.require_subcommand(1);

    const std::map<std::string, AlphabetMode> alphabet_names{{"raw", AlphabetMode::raw},
                                                             {"dense", AlphabetMode::dense}};
    const std::map<std::string, CodecId> codec_names{{"footprint", CodecId::footprint}, {"mtf", CodecId::mtf}};
    const std::map<std::string, fpc::cli::ReportFormat> format_names{{"text", fpc::cli::ReportFormat::text},
                                                                     {"json", fpc::cli::ReportFormat::json}};

    std::string input = "-";
    std::string output = "-";

    fpc::cli::CompressOptions copts;
    std::uint32_t capacity = 0;
    double epsilon = 0.0;
    std::string report_path;
    auto report_format = fpc::cli::ReportFormat::text;
    auto* compress = app.add_subcommand("compress", "Compress a file into an FPC1 container");
    compress->add_option("input", input, "Input file, '-' for stdin");
    compress->add_option("output", output, "Output file, '-' for stdout");
    compress->add_option("--order", copts.order, "Context order l");
    auto* cap_opt = compress->add_option("--capacity", capacity, "Per-context list capacity k")
                        ->check(CLI::PositiveNumber);
    auto* eps_opt = compress->add_option("--epsilon", epsilon, "Derive k = floor(n^eps)")
                        ->check(CLI::PositiveNumber);
    cap_opt->excludes(eps_opt);
    compress->add_option("--alphabet", copts.alphabet, "Symbol mapping")
        ->transform(CLI::CheckedTransformer(alphabet_names, CLI::ignore_case));
    compress->add_option("--codec", copts.codec, "Codec")
        ->transform(CLI::CheckedTransformer(codec_names, CLI::ignore_case));
    compress->add_option("--report", report_path, "Write the report here instead of stderr");
    compress->add_option("--report-format", report_format, "Report format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    compress->add_option("--max-contexts", copts.max_contexts, "Cap on n^l");

    auto* decompress = app.add_subcommand("decompress", "Restore the original file from a container");
    decompress->add_option("input", input, "Input container, '-' for stdin");
    decompress->add_option("output", output, "Output file, '-' for stdout");

    fpc::cli::AnalyzeOptions aopts;
    auto* analyze = app.add_subcommand("analyze", "Empirical entropies H_0..H_L of a file");
    analyze->add_option("input", input, "Input file, '-' for stdin");
    analyze->add_option("--max-order", aopts.max_order, "Highest order L");
    analyze->add_option("--alphabet", aopts.alphabet, "Symbol mapping")
        ->transform(CLI::CheckedTransformer(alphabet_names, CLI::ignore_case));

    fpc::cli::DeBruijnOptions dopts;
    std::string mode = "emit";
    auto* debruijn = app.add_subcommand("debruijn", "Emit or count linear de Bruijn sequences");
    debruijn->add_option("mode", mode, "emit or count")->check(CLI::IsMember({"emit", "count"}));
    debruijn->add_option("--n", dopts.alphabet, "Alphabet size")->required();
    debruijn->add_option("--order", dopts.order, "Order l")->required();
    debruijn->add_flag("--full", dopts.full, "Emit the whole linear sequence, not its n^l prefix");
    debruijn->add_option("output", output, "Output file, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        std::unique_ptr<std::ifstream> in_file;
        std::unique_ptr<std::ofstream> out_file;
        if (*compress) {
            if (cap_opt->count() != 0)
                copts.capacity = capacity;
            if (eps_opt->count() != 0)
                copts.epsilon = epsilon;
            std::istream& in = open_input(input, in_file);
            std::ostream& out = open_output(output, out_file);
            const auto report = fpc::cli::compress(in, out, copts);
            out.flush();
            if (report_path.empty()) {
                fpc::cli::write_report(std::cerr, report, report_format);
            } else {
                std::ofstream rep(report_path);
                if (!rep)
                    throw fpc::Error("cannot open report '" + report_path + "'");
                fpc::cli::write_report(rep, report, report_format);
            }
        } else if (*decompress) {
            std::istream& in = open_input(input, in_file);
            std::ostream& out = open_output(output, out_file);
            fpc::cli::decompress(in, out);
            out.flush();
        } else if (*analyze) {
            std::istream& in = open_input(input, in_file);
            fpc::cli::analyze(in, std::cout, aopts);
        } else if (*debruijn) {
            dopts.mode = mode == "count" ? fpc::cli::DeBruijnMode::count : fpc::cli::DeBruijnMode::emit;
            std::ostream& out = open_output(output, out_file);
            fpc::cli::debruijn(out, dopts);
            out.flush();
        }
    } catch (const std::exception& e) {
        std::cerr << "fpc: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
