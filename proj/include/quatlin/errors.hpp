#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quatlin {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape disagreement between operands.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Bad user input (CLI / file parsing layer).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// A matrix handed to an embedding pullback does not lie in the image
// subring.  `violation` is the relative magnitude of the pattern defect.
class NotInImage : public Error {
public:
    NotInImage(const std::string& what, double violation)
        : Error(what), violation(violation) {}
    double violation;
};

// Coupled-coefficient reduction asked for on a block with real spectrum.
class NonComplexSpectrum : public Error {
public:
    explicit NonComplexSpectrum(const std::string& what) : Error(what) {}
};

// Diagonalization refused: geometric multiplicity deficit.  `structure`
// holds the detected Jordan block sizes, largest eigenvalue cluster first.
class Defective : public Error {
public:
    Defective(const std::string& what, std::vector<int> structure)
        : Error(what), structure(std::move(structure)) {}
    std::vector<int> structure;
};

// Eigenvalue gaps fall inside the clustering tolerance band; block
// structure would be a guess, so we refuse instead.
class ClusterAmbiguity : public Error {
public:
    explicit ClusterAmbiguity(const std::string& what) : Error(what) {}
};

// Both quaternionic recombinations of a coupled pair vanish.
class DegeneratePair : public Error {
public:
    explicit DegeneratePair(const std::string& what) : Error(what) {}
};

// Companion eigenvector has a vanishing bottom block.
class ZeroW : public Error {
public:
    explicit ZeroW(const std::string& what) : Error(what) {}
};

// Companion matrix is not diagonalizable at tolerance; exponential-basis
// extraction is unavailable (the propagator route still works).
class DefectiveCompanion : public Error {
public:
    explicit DefectiveCompanion(const std::string& what) : Error(what) {}
};

// A condition the library guarantees internally was violated; indicates a
// bug rather than bad input.
class InternalConsistency : public Error {
public:
    explicit InternalConsistency(const std::string& what) : Error(what) {}
};

} // namespace quatlin
