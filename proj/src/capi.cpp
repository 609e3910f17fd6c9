extern "C" { int hc_placeholder(void); int hc_placeholder(void){return 0;} }
