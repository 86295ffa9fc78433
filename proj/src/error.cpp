#include "nestsim/error.hpp"

namespace nestsim {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::UnknownPattern: return "UnknownPattern";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::AsymmetricPattern: return "AsymmetricPattern";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::WrongShape: return "WrongShape";
    case ErrorKind::InvalidDepth: return "InvalidDepth";
    case ErrorKind::AttenuatedOut: return "AttenuatedOut";
    case ErrorKind::InvalidHop: return "InvalidHop";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DegenerateLayout: return "DegenerateLayout";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Error";
}

} // namespace nestsim
