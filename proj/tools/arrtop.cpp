// arrtop: run one pipeline stage on a model file and print JSON.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arrtop/json_io.hpp"

using namespace arrtop;

namespace {

struct RunConfig {
    std::string command;
    std::string model_path;
    std::string output_path;
    std::string dot_path;
    std::string perms_path;
    std::string stage;
    std::string window;
    std::size_t max_hyperplanes = EnumerationOptions{}.max_hyperplanes;
};

WindowOptions parse_window(const std::string& text)
{
    WindowOptions w;
    if (text.empty())
        return w;
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw SchemaError("--window expects lo,hi");
    w.low = parse_rational(text.substr(0, comma));
    w.high = parse_rational(text.substr(comma + 1));
    return w;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw SchemaError("cannot write " + path);
    out << text;
}

Json homology_json(const Trisp& t)
{
    auto out = to_json(homology(t));
    Json counts = Json::array();
    long long chi = 0;
    for (int k = 0; k <= t.dimension(); ++k) {
        counts.push_back(t.level(static_cast<std::size_t>(k)).size());
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(t.level(static_cast<std::size_t>(k)).size());
    }
    out["simplex_counts"] = counts;
    out["euler_from_counts"] = chi;
    return out;
}

Json run(const RunConfig& cfg)
{
    const auto model = load_model(cfg.model_path);
    const FaceData fd = build_faces(model, EnumerationOptions{cfg.max_hyperplanes}, parse_window(cfg.window));
    const std::string& cmd = cfg.command;

    if (cmd == "faces") {
        if (!cfg.dot_path.empty())
            write_text(cfg.dot_path, to_dot(underlying_poset(fd.category), "faces"));
        return to_json(fd);
    }
    if (cmd == "lattice") {
        auto lattice = intersection_poset(fd);
        if (!cfg.dot_path.empty())
            write_text(cfg.dot_path, to_dot(lattice, "intersections"));
        return to_json(lattice);
    }
    if (cmd == "salvetti") {
        auto sal = salvetti_category(fd);
        auto out = to_json(sal);
        out["homology"] = to_json(homology(nerve(sal.category)));
        if (!cfg.dot_path.empty())
            write_text(cfg.dot_path, to_dot(arrangement_graph(salvetti_two_complex(fd).complex)));
        return out;
    }
    if (cmd == "homology") {
        const std::string stage = cfg.stage.empty() ? "salvetti" : cfg.stage;
        Json out;
        if (stage == "salvetti") {
            auto sal = salvetti_category(fd);
            out = homology_json(nerve(sal.category));
            out["grade_counts"] = sal.grade_counts();
            out["cell_euler"] = to_json(sal)["euler_from_counts"];
        } else if (stage == "faces") {
            out = homology_json(nerve(fd.category));
        } else {
            throw SchemaError("homology: unknown stage \"" + stage + "\" (salvetti, faces)");
        }
        out["stage"] = stage;
        return out;
    }
    if (cmd == "mh-check") {
        const std::string stage = cfg.stage.empty() ? "dual" : cfg.stage;
        CellGraphComplex q;
        if (stage == "dual")
            q = dual_complex(fd);
        else if (stage == "salvetti")
            q = salvetti_cw(fd).complex;
        else
            throw SchemaError("mh-check: unknown stage \"" + stage + "\" (dual, salvetti)");
        auto out = to_json(check_mh(q));
        out["stage"] = stage;
        out["cell_counts"] = q.counts();
        return out;
    }
    if (cmd == "pi1") {
        auto s = salvetti_two_complex(fd);
        auto out = to_json(pi1_presentation(s.complex));
        out["route"] = s.route;
        out["vertices"] = s.complex.vertices.size();
        out["edges"] = s.complex.edges.size();
        out["faces"] = s.complex.faces.size();
        if (!cfg.dot_path.empty())
            write_text(cfg.dot_path, to_dot(arrangement_graph(s.complex)));
        return out;
    }
    if (cmd == "cover") {
        if (cfg.perms_path.empty())
            throw SchemaError("cover: --perms is required");
        auto rho = permutations_from_json(read_json_file(cfg.perms_path));
        auto s = salvetti_two_complex(fd);
        auto out = to_json(build_cover(s.complex, pi1_presentation(s.complex), rho));
        out["sheets"] = rho.sheets;
        out["route"] = s.route;
        return out;
    }
    if (cmd == "oracle") {
        const auto* a = std::get_if<HyperplaneArrangement>(&model);
        if (!a)
            throw ModelError("oracle: only hyperplane models have a Whitney table");
        auto w = whitney_oracle(*a);
        auto out = to_json(w);
        const std::size_t chambers = fd.chambers().size();
        const std::size_t bounded = bounded_chambers(fd).size();
        out["enumerated_chambers"] = chambers;
        out["enumerated_bounded"] = bounded;
        out["agree"] = chambers == w.chambers && bounded == w.bounded;
        return out;
    }
    throw SchemaError("unknown command " + cmd);
}

int fail(int code, const std::string& kind, const std::string& message)
{
    std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Combinatorial invariants of arrangements of codimension-1 submanifolds"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add = [&](const std::string& name, const std::string& about) {
        auto* sub = app.add_subcommand(name, about);
        sub->add_option("model", cfg.model_path, "model JSON file")->required();
        sub->add_option("-o,--output", cfg.output_path, "output file (default stdout)");
        sub->add_option("--window", cfg.window, "periodic window lo,hi");
        sub->add_option("--max-hyperplanes", cfg.max_hyperplanes, "enumeration bound");
        sub->callback([&cfg, name] { cfg.command = name; });
        return sub;
    };
    add("faces", "face category")->add_option("--dot", cfg.dot_path, "Hasse diagram of the face poset");
    add("lattice", "intersection poset")->add_option("--dot", cfg.dot_path, "Hasse diagram");
    add("salvetti", "Salvetti category")->add_option("--dot", cfg.dot_path, "arrangement graph");
    add("homology", "integral homology")->add_option("--stage", cfg.stage, "salvetti or faces");
    add("mh-check", "MH-complex axioms")->add_option("--stage", cfg.stage, "dual or salvetti");
    add("pi1", "fundamental group presentation")->add_option("--dot", cfg.dot_path, "arrangement graph");
    add("cover", "finite cover")->add_option("--perms", cfg.perms_path, "permutation JSON");
    add("oracle", "Whitney and Zaslavsky table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    }

    try {
        write_text(cfg.output_path, run(cfg).dump(2) + "\n");
    } catch (const SchemaError& e) {
        return fail(2, "schema", e.what());
    } catch (const ModelError& e) {
        return fail(3, "model", e.what());
    } catch (const ConsistencyError& e) {
        return fail(4, "consistency", e.what());
    }
    return 0;
}
