#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polarion/bounds.hpp"
#include "polarion/evolution.hpp"
#include "polarion/experiments.hpp"
#include "polarion/ionchain.hpp"
#include "polarion/observables.hpp"

namespace py = pybind11;
using namespace polarion;

PYBIND11_MODULE(_polarion, m) {
    m.doc() = "Holstein-model digital simulation on trapped-ion chains";

    py::class_<CompositeBasis>(m, "CompositeBasis")
        .def(py::init<int, int, int>(), py::arg("n_spins"), py::arg("n_modes"),
             py::arg("cutoff"))
        .def_readonly("n_spins", &CompositeBasis::n_spins)
        .def_readonly("n_modes", &CompositeBasis::n_modes)
        .def_readonly("cutoff", &CompositeBasis::cutoff)
        .def("dimension", &CompositeBasis::dimension)
        .def("decode", &CompositeBasis::decode)
        .def("encode", &CompositeBasis::encode);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<ComplexVector, CompositeBasis>(), py::arg("amplitudes"),
             py::arg("basis"))
        .def_property_readonly("amplitudes",
                               [](const StateVector& s) { return s.amps; })
        .def_property_readonly("basis", [](const StateVector& s) { return s.basis; })
        .def("norm", &StateVector::norm);

    py::enum_<Pauli>(m, "Pauli")
        .value("X", Pauli::X)
        .value("Y", Pauli::Y)
        .value("Z", Pauli::Z)
        .value("Plus", Pauli::Plus)
        .value("Minus", Pauli::Minus);

    m.def("pauli", &pauli);
    m.def("boson_annihilator", &boson_annihilator, py::arg("cutoff"));
    m.def("boson_number", &boson_number, py::arg("cutoff"));
    m.def("boson_position", &boson_position, py::arg("cutoff"));
    m.def("embed_spin", &embed_spin);
    m.def("embed_mode", &embed_mode);
    m.def("expectation", py::overload_cast<const ComplexMatrix&, const StateVector&>(
                             &expectation));
    m.def("fidelity", &fidelity);

    py::class_<HolsteinParams>(m, "HolsteinParams")
        .def(py::init([](double h, double g, double omega0, int n_sites, int cutoff) {
                 HolsteinParams p{h, g, omega0, n_sites, cutoff};
                 p.validate();
                 return p;
             }),
             py::arg("h"), py::arg("g"), py::arg("omega0"), py::arg("n_sites"),
             py::arg("cutoff"))
        .def_readwrite("h", &HolsteinParams::h)
        .def_readwrite("g", &HolsteinParams::g)
        .def_readwrite("omega0", &HolsteinParams::omega0)
        .def_readwrite("n_sites", &HolsteinParams::n_sites)
        .def_readwrite("cutoff", &HolsteinParams::cutoff);

    m.def("holstein_basis", &holstein_basis);
    m.def("jordan_wigner_lowering", &jordan_wigner_lowering);
    m.def("build_hamiltonian", &build_hamiltonian);
    m.def("decompose", &decompose);
    m.def("initial_state", &initial_state);

    m.def("exact_evolve", &exact_evolve, py::arg("hamiltonian"), py::arg("state"),
          py::arg("t"));
    m.def(
        "trotter_evolve",
        [](const std::vector<ComplexMatrix>& terms, const StateVector& psi0, double t, int r,
           bool symmetric) {
            TrotterPlan plan{terms, t, r, symmetric};
            return trotter_evolve(plan, psi0);
        },
        py::arg("terms"), py::arg("state"), py::arg("t"), py::arg("steps"),
        py::arg("symmetric") = true);

    py::class_<ChainGeometry>(m, "ChainGeometry")
        .def_readonly("frequencies", &ChainGeometry::frequencies)
        .def_readonly("modes", &ChainGeometry::modes)
        .def_readonly("positions", &ChainGeometry::positions);
    m.def("normal_modes", &normal_modes, py::arg("n_ions"));
    m.def("lamb_dicke", &lamb_dicke, py::arg("modes"), py::arg("overall"));

    py::class_<IonChainModel>(m, "IonChainModel")
        .def_readonly("n_ions", &IonChainModel::n_ions)
        .def_readonly("n_sites", &IonChainModel::n_sites)
        .def_readonly("nu", &IonChainModel::nu)
        .def_readonly("eta", &IonChainModel::eta)
        .def_readonly("delta_shift", &IonChainModel::delta_shift);
    m.def("make_ion_chain", &make_ion_chain, py::arg("n_ions"), py::arg("omega0"),
          py::arg("lamb_dicke_scale") = 0.1, py::arg("carrier") = 0.0);

    py::enum_<SpinAxis>(m, "SpinAxis").value("X", SpinAxis::X).value("Y", SpinAxis::Y);
    py::class_<DriveSpec>(m, "DriveSpec")
        .def_readonly("ions", &DriveSpec::ions)
        .def_readonly("rabi", &DriveSpec::rabi)
        .def_readonly("detuning", &DriveSpec::detuning)
        .def_readonly("axis", &DriveSpec::axis)
        .def_readonly("target_mode", &DriveSpec::target_mode);
    m.def("calibrate_rabi", &calibrate_rabi, py::arg("chain"), py::arg("target_j"),
          py::arg("first_ion"), py::arg("mode"), py::arg("tau"));
    m.def("effective_ising_coupling", &effective_ising_coupling);

    py::class_<MagnusReport>(m, "MagnusReport")
        .def_readonly("z1", &MagnusReport::z1)
        .def_readonly("z2", &MagnusReport::z2)
        .def_readonly("nnn_to_nn_ratio", &MagnusReport::nnn_to_nn_ratio)
        .def_readonly("critical_time", &MagnusReport::critical_time);
    m.def("magnus_nnn", &magnus_nnn, py::arg("chain"), py::arg("delta1"), py::arg("delta2"),
          py::arg("t"));

    m.def("displacement_charpoly", &displacement_charpoly, py::arg("n"));
    m.def("displacement_largest_zero", &displacement_largest_zero, py::arg("n"));
    py::class_<NormBound>(m, "NormBound")
        .def_readonly("reported", &NormBound::reported)
        .def_readonly("verified", &NormBound::verified);
    m.def("holstein_norm_bound", &holstein_norm_bound);
    m.def("gate_count_bound", &gate_count_bound, py::arg("params"), py::arg("t"),
          py::arg("eps"), py::arg("k") = 1);

    py::enum_<Picture>(m, "Picture")
        .value("SpinBoson", Picture::SpinBoson)
        .value("Ion", Picture::Ion);
    m.def("polaron_correlation", &polaron_correlation, py::arg("state"), py::arg("site_i"),
          py::arg("site_j"), py::arg("picture"), py::arg("mode_map") = std::vector<int>{});
    m.def("polaron_correlation_spin", &polaron_correlation_spin);

    py::class_<CorrelationProfile>(m, "CorrelationProfile")
        .def_readonly("g", &CorrelationProfile::g)
        .def_readonly("time", &CorrelationProfile::time)
        .def_readonly("chi", &CorrelationProfile::chi)
        .def_readonly("width", &CorrelationProfile::width)
        .def_readonly("electron_site", &CorrelationProfile::electron_site);
    m.def("polaron_size_scan", &polaron_size_scan, py::arg("g_values"), py::arg("params"),
          py::arg("time"));

    py::class_<BudgetReport>(m, "BudgetReport")
        .def_readonly("simulated_time_us", &BudgetReport::simulated_time_us)
        .def_readonly("protocol_time_us", &BudgetReport::protocol_time_us)
        .def_readonly("rotations", &BudgetReport::rotations)
        .def_readonly("term_exponentials", &BudgetReport::term_exponentials)
        .def_readonly("gate_bound", &BudgetReport::gate_bound);
    m.def("emit_budget", &emit_budget, py::arg("t"), py::arg("r"), py::arg("n_terms"),
          py::arg("params") = nullptr, py::arg("eps") = 0.01);

    py::class_<ExperimentInfo>(m, "ExperimentInfo")
        .def_readonly("id", &ExperimentInfo::id)
        .def_readonly("figure", &ExperimentInfo::figure)
        .def_readonly("description", &ExperimentInfo::description);
    m.def("experiment_catalog", &experiment_catalog);
    m.def(
        "run_experiment",
        [](const std::string& id, const std::string& out_dir, int cutoff, int steps) {
            ExperimentConfig cfg;
            cfg.id = id;
            cfg.out_dir = out_dir;
            cfg.cutoff = cutoff;
            cfg.steps = steps;
            run_experiment(cfg);
        },
        py::arg("id"), py::arg("out_dir") = ".", py::arg("cutoff") = -1,
        py::arg("steps") = -1);
}
