mod num {
    use vcst_core::num::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-2.5", "0.000001", "12.34", "1000000"] {
            let v: Fixed = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("1.500000".parse::<Fixed>().unwrap().to_string(), "1.5");
        assert_eq!(".5".parse::<Fixed>().unwrap(), Fixed::from_micros(500_000));
    }

    #[test]
    fn rejects_malformed_decimals() {
        for s in ["", "-", "1.", "1.0000001", "1e3", "abc", "1.2.3"] {
            assert!(s.parse::<Fixed>().is_err(), "{s}");
        }
        assert!("-1".parse::<Weight>().is_err());
    }

    #[test]
    fn infinite_weight_orders_last_and_absorbs() {
        let w: Weight = "inf".parse().unwrap();
        assert!(Weight::from_int(1_000_000) < w);
        assert_eq!(Weight::ONE + w, Weight::Infinite);
        assert_eq!(w.to_string(), "inf");
        let s: Weight = [Weight::ONE, Weight::from_micros(1)].into_iter().sum();
        assert_eq!(s.to_string(), "1.000001");
    }
}
